//! Deterministic Schreier–Sims.
//!
//! Base points are taken as the least point moved by the generator that
//! forces a new level, and Schreier generators are scanned in a fixed
//! order, so the chain for a given generating list is always the same.

use crate::perm::Permutation;

#[derive(Debug, Clone)]
struct Level {
    base: usize,
    gens: Vec<Permutation>,
    orbit: Vec<usize>,
    /// `reps[beta] = (u, u⁻¹)` with `u.apply(base) == beta`.
    reps: Vec<Option<(Permutation, Permutation)>>,
}

impl Level {
    fn new(base: usize, degree: usize) -> Self {
        let mut level = Level {
            base,
            gens: Vec::new(),
            orbit: Vec::new(),
            reps: Vec::new(),
        };
        level.rebuild(degree);
        level
    }

    fn rebuild(&mut self, degree: usize) {
        self.reps = vec![None; degree];
        let id = Permutation::identity(degree);
        self.reps[self.base] = Some((id.clone(), id));
        self.orbit = vec![self.base];
        let mut i = 0;
        while i < self.orbit.len() {
            let beta = self.orbit[i];
            let u = self.reps[beta].as_ref().unwrap().0.clone();
            for s in &self.gens {
                let gamma = s.apply(beta);
                if self.reps[gamma].is_none() {
                    let v = u.then(s);
                    let vi = v.inverse();
                    self.reps[gamma] = Some((v, vi));
                    self.orbit.push(gamma);
                }
            }
            i += 1;
        }
    }
}

#[derive(Debug, Clone)]
pub struct StabChain {
    degree: usize,
    levels: Vec<Level>,
}

impl StabChain {
    pub fn build(degree: usize, generators: &[Permutation]) -> Self {
        let gens: Vec<Permutation> = generators.iter().filter(|g| !g.is_identity()).cloned().collect();
        let mut base: Vec<usize> = Vec::new();
        for g in &gens {
            if base.iter().all(|&b| g.apply(b) == b) {
                base.push(g.first_moved().unwrap());
            }
        }
        let mut levels: Vec<Level> = Vec::with_capacity(base.len());
        for (i, &b) in base.iter().enumerate() {
            let mut level = Level {
                base: b,
                gens: gens
                    .iter()
                    .filter(|g| base[..i].iter().all(|&c| g.apply(c) == c))
                    .cloned()
                    .collect(),
                orbit: Vec::new(),
                reps: Vec::new(),
            };
            level.rebuild(degree);
            levels.push(level);
        }
        let mut chain = StabChain { degree, levels };
        chain.complete();
        chain
    }

    fn complete(&mut self) {
        let mut i = self.levels.len() as isize - 1;
        while i >= 0 {
            let lvl = i as usize;
            let mut found: Option<(Permutation, usize)> = None;
            'scan: for idx in 0..self.levels[lvl].orbit.len() {
                let beta = self.levels[lvl].orbit[idx];
                let u = self.levels[lvl].reps[beta].as_ref().unwrap().0.clone();
                for s in self.levels[lvl].gens.clone() {
                    let gamma = s.apply(beta);
                    let ui = &self.levels[lvl].reps[gamma].as_ref().unwrap().1;
                    let h = u.then(&s).then(ui);
                    if h.is_identity() {
                        continue;
                    }
                    let (y, j) = self.strip_from(h, lvl + 1);
                    if j < self.levels.len() || !y.is_identity() {
                        found = Some((y, j));
                        break 'scan;
                    }
                }
            }
            match found {
                None => i -= 1,
                Some((y, j)) => {
                    if j == self.levels.len() {
                        let b = y.first_moved().expect("non-identity residue");
                        self.levels.push(Level::new(b, self.degree));
                    }
                    for l in lvl + 1..=j {
                        self.levels[l].gens.push(y.clone());
                        self.levels[l].rebuild(self.degree);
                    }
                    i = j as isize;
                }
            }
        }
    }

    /// Sifts `h` through levels `from..`; returns the residue and the level
    /// where sifting stopped (`levels.len()` when it went all the way).
    fn strip_from(&self, mut h: Permutation, from: usize) -> (Permutation, usize) {
        for (l, level) in self.levels.iter().enumerate().skip(from) {
            let beta = h.apply(level.base);
            match &level.reps[beta] {
                None => return (h, l),
                Some((_, ui)) => h = h.then(ui),
            }
        }
        (h, self.levels.len())
    }

    pub fn contains(&self, p: &Permutation) -> bool {
        let (y, j) = self.strip_from(p.clone(), 0);
        j == self.levels.len() && y.is_identity()
    }

    /// Exact order. Panics if the order overflows `u64`.
    pub fn order(&self) -> u64 {
        self.levels
            .iter()
            .try_fold(1u64, |acc, l| acc.checked_mul(l.orbit.len() as u64))
            .expect("group order exceeds u64")
    }

    pub fn base(&self) -> Vec<usize> {
        self.levels.iter().map(|l| l.base).collect()
    }

    /// All elements, unsorted. Caller enforces size limits.
    pub fn enumerate(&self) -> Vec<Permutation> {
        let mut current = vec![Permutation::identity(self.degree)];
        for level in self.levels.iter().rev() {
            let mut next = Vec::with_capacity(current.len() * level.orbit.len());
            for x in &current {
                for &beta in &level.orbit {
                    let u = &level.reps[beta].as_ref().unwrap().0;
                    next.push(x.then(u));
                }
            }
            current = next;
        }
        current
    }
}
