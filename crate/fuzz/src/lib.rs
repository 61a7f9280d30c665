//! Checks shared by the fuzz targets: every parser must reject bad input
//! with an error and round-trip what it accepts.

use bipositive::classical::IntervalSet;
use bipositive::exceptional::parse_goldens;
use bipositive::groups::Descriptor;
use bipositive::mspace::{MSpace, MVector};
use bipositive::Cyclo;

const GROUPS: [&str; 4] = ["S4", "S5", "V2", "S3xS2"];

pub fn descriptor(data: &[u8]) {
    let Ok(text) = std::str::from_utf8(data) else { return };
    if let Ok(d) = text.parse::<Descriptor>() {
        assert_eq!(d.to_string().parse::<Descriptor>().unwrap(), d);
    }
}

/// The first byte picks `D`.
pub fn interval_set(data: &[u8]) {
    let Some((&d, rest)) = data.split_first() else { return };
    let Ok(text) = std::str::from_utf8(rest) else { return };
    let d = d as usize % 26;
    if let Ok(b) = IntervalSet::parse(text, d) {
        assert_eq!(IntervalSet::parse(&b.to_string(), d).unwrap(), b);
    }
}

pub fn goldens(data: &[u8]) {
    if let Ok(text) = std::str::from_utf8(data) {
        let _ = parse_goldens(text);
    }
}

/// The first byte picks the group.
pub fn mvector_text(data: &[u8]) {
    let Some((&g, rest)) = data.split_first() else { return };
    let Ok(text) = std::str::from_utf8(rest) else { return };
    let space = MSpace::parse(GROUPS[g as usize % GROUPS.len()]).unwrap();
    if let Ok(v) = MVector::parse(&space, text) {
        assert_eq!(MVector::parse(&space, &v.to_string()).unwrap(), v);
    }
}

pub fn mvector_json(data: &[u8]) {
    let Ok(text) = std::str::from_utf8(data) else { return };
    let space = MSpace::parse("S4").unwrap();
    if let Ok(v) = MVector::from_json(&space, text) {
        assert_eq!(MVector::from_json(&space, &v.to_json()).unwrap(), v);
    }
}

pub fn cyclo_json(data: &[u8]) {
    if let Ok(c) = serde_json::from_slice::<Cyclo>(data) {
        let back = serde_json::to_string(&c).unwrap();
        assert_eq!(serde_json::from_str::<Cyclo>(&back).unwrap(), c);
    }
}

#[cfg(test)]
mod tests {
    use std::fs;
    use std::path::Path;

    type Check = fn(&[u8]);

    const ALPHABET: &[u8] = b"()[]{},+-*^'/0123456789x<>:\"|#";

    const TARGETS: [(&str, Check); 6] = [
        ("descriptor", super::descriptor),
        ("interval_set", super::interval_set),
        ("goldens", super::goldens),
        ("mvector_text", super::mvector_text),
        ("mvector_json", super::mvector_json),
        ("cyclo_json", super::cyclo_json),
    ];

    /// Replays the seeds and a few thousand byte-level mutations of each.
    #[test]
    fn seeds_and_mutations() {
        let mut state = 0x9e3779b97f4a7c15u64;
        let mut next = move || {
            state ^= state << 13;
            state ^= state >> 7;
            state ^= state << 17;
            state
        };
        for (name, check) in TARGETS {
            let dir = Path::new(env!("CARGO_MANIFEST_DIR")).join("corpus").join(name);
            let seeds: Vec<Vec<u8>> = fs::read_dir(&dir).unwrap().map(|e| fs::read(e.unwrap().path()).unwrap()).collect();
            assert!(!seeds.is_empty(), "{name}");
            for seed in &seeds {
                check(seed);
                for _ in 0..2000 {
                    let mut data = seed.clone();
                    for _ in 0..1 + next() % 4 {
                        let r = next() as usize;
                        match r % 3 {
                            0 if !data.is_empty() => {
                                let i = r / 3 % data.len();
                                data[i] = (next() % 128) as u8;
                            }
                            1 if !data.is_empty() => {
                                data.remove(r / 3 % data.len());
                            }
                            _ => {
                                let i = r / 3 % (data.len() + 1);
                                data.insert(i, ALPHABET[next() as usize % ALPHABET.len()]);
                            }
                        }
                    }
                    check(&data);
                }
            }
        }
    }
}
