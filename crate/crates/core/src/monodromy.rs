//! Permutations induced on a root window by closed parameter loops, and the
//! groups they generate.
//!
//! Convention: `Permutation::map[i - 1] = j` means the root labeled i ends,
//! after transport, where root j started. Transport along p then q gives
//! `compose(&extract(p), &extract(q))`, i.e. the left path acts first.

use std::collections::{HashSet, VecDeque};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{MonoError, Result};
use crate::path::ParamPath;
use crate::roots::LabeledRootSet;
use crate::tracker::{track_bundle, TrackConfig, TrackReport};

/// End roots must land within this distance of a start root.
pub const MATCH_TOL: f64 = 1e-8;

/// Bijection on labels 1..N; serializes as the JSON array of 1-based images.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<usize>", into = "Vec<usize>")]
pub struct Permutation {
    map: Vec<usize>,
}

impl TryFrom<Vec<usize>> for Permutation {
    type Error = MonoError;

    fn try_from(map: Vec<usize>) -> Result<Self> {
        let n = map.len();
        let mut seen = vec![false; n];
        for &j in &map {
            if j == 0 || j > n || seen[j - 1] {
                return Err(MonoError::NotBijective(format!("{map:?}")));
            }
            seen[j - 1] = true;
        }
        Ok(Self { map })
    }
}

impl From<Permutation> for Vec<usize> {
    fn from(p: Permutation) -> Self {
        p.map
    }
}

impl Permutation {
    pub fn identity(n: usize) -> Self {
        Self {
            map: (1..=n).collect(),
        }
    }

    pub fn new(map: Vec<usize>) -> Result<Self> {
        Self::try_from(map)
    }

    /// The transposition (i j) on n labels.
    pub fn transposition(n: usize, i: usize, j: usize) -> Result<Self> {
        if i == j || i == 0 || j == 0 || i > n || j > n {
            return Err(MonoError::NotBijective(format!("({i} {j}) on {n} labels")));
        }
        let mut map: Vec<usize> = (1..=n).collect();
        map.swap(i - 1, j - 1);
        Ok(Self { map })
    }

    pub fn size(&self) -> usize {
        self.map.len()
    }

    /// Image of label `i` (1-based).
    pub fn apply(&self, i: usize) -> usize {
        self.map[i - 1]
    }

    pub fn images(&self) -> &[usize] {
        &self.map
    }

    pub fn is_identity(&self) -> bool {
        self.map.iter().enumerate().all(|(i, &j)| i + 1 == j)
    }

    pub fn inverse(&self) -> Self {
        let mut inv = vec![0; self.map.len()];
        for (i, &j) in self.map.iter().enumerate() {
            inv[j - 1] = i + 1;
        }
        Self { map: inv }
    }

    /// `self` first, then `other`.
    pub fn then(&self, other: &Permutation) -> Result<Self> {
        compose(self, other)
    }

    /// Cycles of length ≥ 2, each led by its smallest label, sorted by leader.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let n = self.map.len();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for start in 1..=n {
            if seen[start - 1] {
                continue;
            }
            let mut cycle = vec![start];
            seen[start - 1] = true;
            let mut next = self.apply(start);
            while next != start {
                seen[next - 1] = true;
                cycle.push(next);
                next = self.apply(next);
            }
            if cycle.len() > 1 {
                out.push(cycle);
            }
        }
        out
    }

    /// The swapped pair if this is exactly one 2-cycle.
    pub fn is_transposition(&self) -> Option<(usize, usize)> {
        match self.cycles().as_slice() {
            [pair] if pair.len() == 2 => Some((pair[0], pair[1])),
            _ => None,
        }
    }

    /// The same permutation with every label i renamed to `rename[i - 1]`.
    pub fn relabel(&self, rename: &[usize]) -> Result<Self> {
        let rename = Permutation::new(rename.to_vec())?;
        if rename.size() != self.size() {
            return Err(MonoError::SizeMismatch(rename.size(), self.size()));
        }
        let mut map = vec![0; self.size()];
        for i in 1..=self.size() {
            map[rename.apply(i) - 1] = rename.apply(self.apply(i));
        }
        Ok(Self { map })
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cycles = self.cycles();
        if cycles.is_empty() {
            return write!(f, "()");
        }
        for c in cycles {
            let parts: Vec<String> = c.iter().map(usize::to_string).collect();
            write!(f, "({})", parts.join(" "))?;
        }
        Ok(())
    }
}

/// `p` first, then `q`: i ↦ q(p(i)).
pub fn compose(p: &Permutation, q: &Permutation) -> Result<Permutation> {
    if p.size() != q.size() {
        return Err(MonoError::SizeMismatch(p.size(), q.size()));
    }
    Ok(Permutation {
        map: p.map.iter().map(|&j| q.apply(j)).collect(),
    })
}

pub fn inverse(p: &Permutation) -> Permutation {
    p.inverse()
}

pub fn cycles(p: &Permutation) -> Vec<Vec<usize>> {
    p.cycles()
}

pub fn is_transposition(p: &Permutation) -> Option<(usize, usize)> {
    p.is_transposition()
}

/// Reads the permutation off a closed-loop transport: label i goes to the
/// start label whose position its end position matches.
pub fn extract_permutation(start: &LabeledRootSet, end: &LabeledRootSet) -> Result<Permutation> {
    start.check_labels()?;
    end.check_labels()?;
    if start.len() != end.len() {
        return Err(MonoError::SizeMismatch(start.len(), end.len()));
    }
    let mut map = vec![0; start.len()];
    for r in &end.roots {
        let mut dists: Vec<(f64, usize)> = start
            .roots
            .iter()
            .map(|s| ((s.z - r.z).norm(), s.label))
            .collect();
        dists.sort_by(|x, y| x.0.total_cmp(&y.0));
        let (best, target) = dists[0];
        if best > MATCH_TOL {
            return Err(MonoError::UnmatchedRoot {
                label: r.label,
                worst: best,
            });
        }
        if let Some(&(second, _)) = dists.get(1) {
            if second <= 10.0 * best {
                return Err(MonoError::AmbiguousMatch {
                    label: r.label,
                    first: best,
                    second,
                });
            }
        }
        map[r.label - 1] = target;
    }
    Permutation::new(map)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Generator {
    pub perm: Permutation,
    /// Which loop produced it, e.g. "keyhole n=2 rho=0.5".
    pub provenance: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GeneratorSet {
    pub size: usize,
    pub generators: Vec<Generator>,
}

impl GeneratorSet {
    pub fn new(size: usize) -> Self {
        Self {
            size,
            generators: Vec::new(),
        }
    }

    pub fn push(&mut self, perm: Permutation, provenance: impl Into<String>) -> Result<()> {
        if perm.size() != self.size {
            return Err(MonoError::SizeMismatch(self.size, perm.size()));
        }
        self.generators.push(Generator {
            perm,
            provenance: provenance.into(),
        });
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum GroupOrder {
    Exact(usize),
    CapExceeded(usize),
}

impl GroupOrder {
    pub fn exact(self) -> Option<usize> {
        match self {
            GroupOrder::Exact(n) => Some(n),
            GroupOrder::CapExceeded(_) => None,
        }
    }
}

/// Order of the generated group by breadth-first closure, stopping once more
/// than `cap` elements have been seen.
pub fn group_order(gens: &GeneratorSet, cap: usize) -> GroupOrder {
    let identity = Permutation::identity(gens.size);
    let mut seen: HashSet<Permutation> = HashSet::new();
    let mut queue = VecDeque::new();
    seen.insert(identity.clone());
    queue.push_back(identity);
    while let Some(g) = queue.pop_front() {
        for s in &gens.generators {
            let h = compose(&g, &s.perm).expect("generator sizes checked on insert");
            if seen.insert(h.clone()) {
                if seen.len() > cap {
                    return GroupOrder::CapExceeded(cap);
                }
                queue.push_back(h);
            }
        }
    }
    GroupOrder::Exact(seen.len())
}

/// Whether the orbit of label 1 is every label.
pub fn transitivity_check(gens: &GeneratorSet) -> bool {
    if gens.size <= 1 {
        return true;
    }
    let mut seen = vec![false; gens.size];
    seen[0] = true;
    let mut queue = VecDeque::from([1usize]);
    while let Some(i) = queue.pop_front() {
        for s in &gens.generators {
            let j = s.perm.apply(i);
            if !seen[j - 1] {
                seen[j - 1] = true;
                queue.push_back(j);
            }
        }
    }
    seen.into_iter().all(|b| b)
}

/// Result of transporting a root window around one closed loop.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LoopMonodromy {
    pub permutation: Permutation,
    pub end: LabeledRootSet,
    pub report: TrackReport,
}

/// Tracks `base` around the closed `path` and extracts the induced permutation.
pub fn loop_monodromy(
    base: &LabeledRootSet,
    path: &ParamPath,
    cfg: &TrackConfig,
) -> Result<LoopMonodromy> {
    if !path.closed {
        return Err(MonoError::BadStart("monodromy needs a closed path".into()));
    }
    let (end, report) = track_bundle(base, path, cfg)?;
    let permutation = extract_permutation(base, &end)?;
    Ok(LoopMonodromy {
        permutation,
        end,
        report,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_complex::Complex64;

    fn t(n: usize, i: usize, j: usize) -> Permutation {
        Permutation::transposition(n, i, j).unwrap()
    }

    fn gens(size: usize, perms: Vec<Permutation>) -> GeneratorSet {
        let mut g = GeneratorSet::new(size);
        for p in perms {
            g.push(p, "test").unwrap();
        }
        g
    }

    #[test]
    fn rejects_non_bijections() {
        assert!(Permutation::new(vec![1, 1]).is_err());
        assert!(Permutation::new(vec![0, 1]).is_err());
        assert!(Permutation::new(vec![3, 1]).is_err());
        assert!(serde_json::from_str::<Permutation>("[2,2]").is_err());
    }

    #[test]
    fn composition_and_cycles() {
        let p = Permutation::new(vec![3, 1, 4, 2]).unwrap();
        assert!(compose(&p, &p.inverse()).unwrap().is_identity());
        // (1 3)(1 2) read right to left: (1 2) first
        let prod = compose(&t(3, 1, 2), &t(3, 1, 3)).unwrap();
        assert_eq!(prod.cycles(), vec![vec![1, 2, 3]]);
        assert_eq!(prod.to_string(), "(1 2 3)");
        assert_eq!(Permutation::identity(3).to_string(), "()");
        assert!(matches!(
            compose(&t(3, 1, 2), &t(4, 1, 2)),
            Err(MonoError::SizeMismatch(3, 4))
        ));
    }

    #[test]
    fn transposition_detection() {
        assert_eq!(Permutation::identity(4).is_transposition(), None);
        assert_eq!(t(6, 1, 4).is_transposition(), Some((1, 4)));
        assert_eq!(t(6, 4, 1).is_transposition(), Some((1, 4)));
        let three = Permutation::new(vec![2, 3, 1]).unwrap();
        assert_eq!(three.is_transposition(), None);
        let double = compose(&t(4, 1, 2), &t(4, 3, 4)).unwrap();
        assert_eq!(double.is_transposition(), None);
    }

    #[test]
    fn group_orders() {
        assert_eq!(
            group_order(&gens(2, vec![t(2, 1, 2)]), 100),
            GroupOrder::Exact(2)
        );
        let star = gens(5, (2..=5).map(|j| t(5, 1, j)).collect());
        assert_eq!(group_order(&star, 1000), GroupOrder::Exact(120));
        assert_eq!(group_order(&star, 50), GroupOrder::CapExceeded(50));
        assert_eq!(group_order(&gens(4, vec![]), 10), GroupOrder::Exact(1));
        // a 4-cycle alone: cyclic of order 4
        let c4 = Permutation::new(vec![2, 3, 4, 1]).unwrap();
        assert_eq!(group_order(&gens(4, vec![c4]), 100), GroupOrder::Exact(4));
        // S_8 closure stays tractable
        let star8 = gens(8, (2..=8).map(|j| t(8, 1, j)).collect());
        assert_eq!(group_order(&star8, 50_000), GroupOrder::Exact(40_320));
    }

    #[test]
    fn transitivity() {
        assert!(!transitivity_check(&gens(3, vec![t(3, 1, 2)])));
        assert!(transitivity_check(&gens(
            5,
            (2..=5).map(|j| t(5, 1, j)).collect()
        )));
        assert!(!transitivity_check(&gens(3, vec![])));
        assert!(transitivity_check(&gens(1, vec![])));
        // orbit reached through label 2
        assert!(transitivity_check(&gens(3, vec![t(3, 1, 2), t(3, 2, 3)])));
    }

    #[test]
    fn relabel_conjugates() {
        let p = t(3, 1, 2);
        assert_eq!(p.relabel(&[1, 3, 2]).unwrap(), t(3, 1, 3));
        assert!(p.relabel(&[1, 1, 2]).is_err());
    }

    #[test]
    fn extract_from_positions() {
        let c = |re: f64, im: f64| Complex64::new(re, im);
        let start =
            LabeledRootSet::canonical(c(0.0, 0.0), vec![c(-0.5, 0.0), c(1.0, -4.0), c(1.0, 4.0)]);
        assert!(extract_permutation(&start, &start).unwrap().is_identity());
        let mut end = start.clone();
        end.roots[1].z = start.roots[2].z;
        end.roots[2].z = start.roots[1].z;
        assert_eq!(extract_permutation(&start, &end).unwrap(), t(3, 2, 3));
        end.roots[2].z += 1e-6;
        assert!(matches!(
            extract_permutation(&start, &end),
            Err(MonoError::UnmatchedRoot { label: 3, .. })
        ));
    }

    #[test]
    fn json_is_image_array() {
        let p = Permutation::new(vec![2, 1, 3]).unwrap();
        let text = serde_json::to_string(&p).unwrap();
        assert_eq!(text, "[2,1,3]");
        assert_eq!(serde_json::from_str::<Permutation>(&text).unwrap(), p);
    }
}
