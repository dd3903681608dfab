//! Word-size prime field arithmetic used to pick independent rows before exact
//! elimination.

/// The Mersenne prime 2^31 - 1; products of residues fit in `u64`.
pub const PRIME: u64 = 2_147_483_647;

pub fn inverse(a: u64, p: u64) -> u64 {
    debug_assert!(!a.is_multiple_of(p));
    pow(a % p, p - 2, p)
}

pub fn pow(mut base: u64, mut exp: u64, p: u64) -> u64 {
    let mut acc = 1u64;
    base %= p;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * base % p;
        }
        base = base * base % p;
        exp >>= 1;
    }
    acc
}

/// Incremental echelon basis over F_p; rows are sparse `(col, value)` lists.
#[derive(Debug, Default)]
pub(crate) struct ModpEchelon {
    p: u64,
    /// pivot column -> normalized row (pivot entry 1, leading column = pivot)
    pivots: std::collections::BTreeMap<usize, Vec<(usize, u64)>>,
}

impl ModpEchelon {
    pub fn new(p: u64) -> Self {
        ModpEchelon {
            p,
            pivots: Default::default(),
        }
    }

    /// Reduces `row` against the basis; keeps it if it is independent.
    pub fn insert(&mut self, row: &[(usize, u64)]) -> bool {
        let p = self.p;
        let mut work: std::collections::BTreeMap<usize, u64> =
            row.iter().filter(|(_, v)| *v % p != 0).map(|&(c, v)| (c, v % p)).collect();
        let mut cursor = 0usize;
        loop {
            let next = work.range(cursor..).find(|(c, _)| self.pivots.contains_key(c));
            let Some((&col, &coef)) = next else { break };
            let prow = &self.pivots[&col];
            for &(c, v) in prow {
                let e = work.entry(c).or_insert(0);
                *e = (*e + p - coef * v % p) % p;
                if *e == 0 {
                    work.remove(&c);
                }
            }
            cursor = col + 1;
        }
        let Some((&lead, &lv)) = work.iter().next() else {
            return false;
        };
        let inv = inverse(lv, p);
        let normalized = work.into_iter().map(|(c, v)| (c, v * inv % p)).collect();
        self.pivots.insert(lead, normalized);
        true
    }

    #[cfg(test)]
    pub fn rank(&self) -> usize {
        self.pivots.len()
    }
}
