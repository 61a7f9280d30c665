use std::fmt;

/// A permutation of `{1, ..., n}` stored 0-based as its image list.
///
/// Products compose right to left: `(a * b)(k) = a(b(k))`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Perm(Vec<u8>);

impl Perm {
    pub fn identity(n: usize) -> Self {
        Perm((0..n as u8).collect())
    }

    /// From 0-based images; panics if `images` is not a permutation.
    pub fn from_images(images: Vec<u8>) -> Self {
        let mut seen = vec![false; images.len()];
        for &i in &images {
            assert!(!seen[i as usize], "not a permutation");
            seen[i as usize] = true;
        }
        Perm(images)
    }

    /// From 1-based disjoint cycles, e.g. `&[&[1, 2], &[3, 4]]`.
    pub fn from_cycles(n: usize, cycles: &[&[u8]]) -> Self {
        let mut img: Vec<u8> = (0..n as u8).collect();
        for c in cycles {
            for (j, &a) in c.iter().enumerate() {
                let b = c[(j + 1) % c.len()];
                img[a as usize - 1] = b - 1;
            }
        }
        Perm::from_images(img)
    }

    pub fn degree(&self) -> usize {
        self.0.len()
    }

    pub fn images(&self) -> &[u8] {
        &self.0
    }

    pub fn apply(&self, k: usize) -> usize {
        self.0[k] as usize
    }

    pub fn compose(&self, rhs: &Perm) -> Perm {
        Perm(rhs.0.iter().map(|&k| self.0[k as usize]).collect())
    }

    pub fn inverse(&self) -> Perm {
        let mut out = vec![0u8; self.0.len()];
        for (i, &j) in self.0.iter().enumerate() {
            out[j as usize] = i as u8;
        }
        Perm(out)
    }

    /// Disjoint cycles (0-based) of length at least two, each starting at
    /// its smallest point, ordered by that point.
    pub fn cycles(&self) -> Vec<Vec<u8>> {
        let n = self.0.len();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for s in 0..n {
            if seen[s] {
                continue;
            }
            let mut c = vec![s as u8];
            seen[s] = true;
            let mut k = self.0[s] as usize;
            while k != s {
                seen[k] = true;
                c.push(k as u8);
                k = self.0[k] as usize;
            }
            if c.len() > 1 {
                out.push(c);
            }
        }
        out
    }

    /// Cycle type as a partition of `n` in non-increasing order, fixed points included.
    pub fn cycle_type(&self) -> Vec<usize> {
        let mut t: Vec<usize> = self.cycles().iter().map(|c| c.len()).collect();
        let moved: usize = t.iter().sum();
        t.extend(std::iter::repeat(1).take(self.0.len() - moved));
        t.sort_unstable_by(|a, b| b.cmp(a));
        t
    }

    pub fn fixed_points(&self) -> Vec<usize> {
        (0..self.0.len()).filter(|&k| self.0[k] as usize == k).collect()
    }

    pub fn is_identity(&self) -> bool {
        self.0.iter().enumerate().all(|(i, &j)| i == j as usize)
    }
}

impl fmt::Display for Perm {
    /// 1-based cycle notation, `()` for the identity.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cycles = self.cycles();
        if cycles.is_empty() {
            return write!(f, "()");
        }
        for c in cycles {
            let parts: Vec<String> = c.iter().map(|k| (k + 1).to_string()).collect();
            write!(f, "({})", parts.join(","))?;
        }
        Ok(())
    }
}

impl fmt::Debug for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Perm{self}")
    }
}

/// All permutations of `n` points in lexicographic order of image lists.
pub fn all_perms(n: usize) -> Vec<Perm> {
    fn rec(n: usize, cur: &mut Vec<u8>, used: &mut [bool], out: &mut Vec<Perm>) {
        if cur.len() == n {
            out.push(Perm(cur.clone()));
            return;
        }
        for k in 0..n {
            if !used[k] {
                used[k] = true;
                cur.push(k as u8);
                rec(n, cur, used, out);
                cur.pop();
                used[k] = false;
            }
        }
    }
    let mut out = Vec::new();
    rec(n, &mut Vec::new(), &mut vec![false; n], &mut out);
    out
}
