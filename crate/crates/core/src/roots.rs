use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::equation::{ExpAffine, Family};
use crate::error::{MonoError, Result};

/// Minimum distance between two distinct entries of a root set.
pub const SEPARATION_FLOOR: f64 = 1e-8;

/// Imaginary parts at or below this magnitude count as real.
pub const REAL_TOL: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LabeledRoot {
    pub label: usize,
    pub z: Complex64,
}

/// Finitely many roots of f(z) = a, labeled 1..N.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LabeledRootSet {
    pub a: Complex64,
    pub roots: Vec<LabeledRoot>,
}

impl LabeledRootSet {
    /// Labels the roots canonically: real root first (if any), the rest by
    /// ascending imaginary part with ties broken by real part.
    pub fn canonical(a: Complex64, mut zs: Vec<Complex64>) -> Self {
        zs.sort_by(|p, q| p.im.total_cmp(&q.im).then(p.re.total_cmp(&q.re)));
        if let Some(pos) = zs.iter().position(|z| z.im.abs() <= REAL_TOL) {
            let real = zs.remove(pos);
            zs.insert(0, real);
        }
        let roots = zs
            .into_iter()
            .enumerate()
            .map(|(i, z)| LabeledRoot { label: i + 1, z })
            .collect();
        Self { a, roots }
    }

    pub fn len(&self) -> usize {
        self.roots.len()
    }

    pub fn is_empty(&self) -> bool {
        self.roots.is_empty()
    }

    pub fn positions(&self) -> Vec<Complex64> {
        self.roots.iter().map(|r| r.z).collect()
    }

    pub fn get(&self, label: usize) -> Option<Complex64> {
        self.roots.iter().find(|r| r.label == label).map(|r| r.z)
    }

    pub fn real_label(&self) -> Option<usize> {
        self.roots
            .iter()
            .find(|r| r.z.im.abs() <= REAL_TOL)
            .map(|r| r.label)
    }

    /// Smallest pairwise distance, `f64::INFINITY` for fewer than two roots.
    pub fn min_separation(&self) -> (f64, Option<(usize, usize)>) {
        let mut best = (f64::INFINITY, None);
        for (i, p) in self.roots.iter().enumerate() {
            for q in &self.roots[i + 1..] {
                let d = (p.z - q.z).norm();
                if d < best.0 {
                    best = (d, Some((p.label, q.label)));
                }
            }
        }
        best
    }

    pub fn max_residual(&self) -> Result<f64> {
        let mut worst: f64 = 0.0;
        for r in &self.roots {
            worst = worst.max((ExpAffine.eval(r.z)? - self.a).norm());
        }
        Ok(worst)
    }

    /// Checks labels are exactly 1..N.
    pub fn check_labels(&self) -> Result<()> {
        let mut seen = vec![false; self.roots.len()];
        for r in &self.roots {
            if r.label == 0 || r.label > seen.len() || seen[r.label - 1] {
                return Err(MonoError::NotBijective(format!(
                    "labels are not 1..{}",
                    seen.len()
                )));
            }
            seen[r.label - 1] = true;
        }
        Ok(())
    }

    /// Label map induced by z ↦ conj(z) on a conjugation-closed set.
    pub fn conjugation_labels(&self, tol: f64) -> Option<Vec<usize>> {
        let mut map = Vec::with_capacity(self.len());
        for r in &self.roots {
            let target = r.z.conj();
            let hit = self.roots.iter().find(|q| (q.z - target).norm() <= tol)?;
            map.push(hit.label);
        }
        Some(map)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn canonical_order_puts_real_root_first() {
        let zs = vec![
            Complex64::new(1.5, 4.4),
            Complex64::new(-0.5, 0.0),
            Complex64::new(1.5, -4.4),
        ];
        let set = LabeledRootSet::canonical(Complex64::new(0.0, 0.0), zs);
        assert_eq!(set.get(1), Some(Complex64::new(-0.5, 0.0)));
        assert_eq!(set.get(2).unwrap().im, -4.4);
        assert_eq!(set.get(3).unwrap().im, 4.4);
        assert_eq!(set.real_label(), Some(1));
        set.check_labels().unwrap();
        assert_eq!(set.conjugation_labels(1e-12).unwrap(), vec![1, 3, 2]);
    }

    #[test]
    fn ties_broken_by_real_part() {
        let zs = vec![Complex64::new(2.0, 1.0), Complex64::new(1.0, 1.0)];
        let set = LabeledRootSet::canonical(Complex64::new(0.0, 1.0), zs);
        assert_eq!(set.get(1).unwrap().re, 1.0);
        assert_eq!(set.min_separation().0, 1.0);
        assert_eq!(set.min_separation().1, Some((1, 2)));
    }
}
