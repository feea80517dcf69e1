use std::collections::HashMap;

use super::FiniteAct;

/// Disjoint-set forest with union by rank and path compression.
#[derive(Clone, Debug)]
pub struct UnionFind {
    parent: Vec<usize>,
    rank: Vec<u8>,
}

impl UnionFind {
    pub fn new(n: usize) -> Self {
        UnionFind {
            parent: (0..n).collect(),
            rank: vec![0; n],
        }
    }

    pub fn find(&mut self, mut x: usize) -> usize {
        let mut root = x;
        while self.parent[root] != root {
            root = self.parent[root];
        }
        while self.parent[x] != root {
            let next = self.parent[x];
            self.parent[x] = root;
            x = next;
        }
        root
    }

    /// Merges the classes of `a` and `b`; returns `false` if they were already merged.
    pub fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        match self.rank[ra].cmp(&self.rank[rb]) {
            std::cmp::Ordering::Less => self.parent[ra] = rb,
            std::cmp::Ordering::Greater => self.parent[rb] = ra,
            std::cmp::Ordering::Equal => {
                self.parent[rb] = ra;
                self.rank[ra] += 1;
            }
        }
        true
    }
}

/// A partition of an act's elements. Class labels are numbered in order of
/// first occurrence, so equal partitions have equal label vectors.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ActCongruence {
    labels: Vec<usize>,
}

impl ActCongruence {
    /// Normalises arbitrary class keys into first-occurrence labels.
    pub fn from_keys<K: std::hash::Hash + Eq>(keys: impl IntoIterator<Item = K>) -> Self {
        let mut seen = HashMap::new();
        let labels = keys
            .into_iter()
            .map(|k| {
                let next = seen.len();
                *seen.entry(k).or_insert(next)
            })
            .collect();
        ActCongruence { labels }
    }

    pub fn identity(n: usize) -> Self {
        ActCongruence {
            labels: (0..n).collect(),
        }
    }

    pub fn universal(n: usize) -> Self {
        ActCongruence { labels: vec![0; n] }
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn labels(&self) -> &[usize] {
        &self.labels
    }

    pub fn class_of(&self, a: usize) -> usize {
        self.labels[a]
    }

    pub fn related(&self, a: usize, b: usize) -> bool {
        self.labels[a] == self.labels[b]
    }

    pub fn num_classes(&self) -> usize {
        self.labels.iter().max().map_or(0, |m| m + 1)
    }

    /// Whether every pair related here is related in `other`.
    pub fn is_finer_than(&self, other: &ActCongruence) -> bool {
        let mut image: HashMap<usize, usize> = HashMap::new();
        self.labels
            .iter()
            .zip(&other.labels)
            .all(|(&a, &b)| *image.entry(a).or_insert(b) == b)
    }

    pub fn intersection(&self, other: &ActCongruence) -> ActCongruence {
        ActCongruence::from_keys(self.labels.iter().zip(&other.labels))
    }

    /// Checks closure under the action of every monoid letter.
    pub fn is_congruence_on(&self, act: &FiniteAct) -> bool {
        let mut rep: HashMap<usize, usize> = HashMap::new();
        for (a, &c) in self.labels.iter().enumerate() {
            let r = *rep.entry(c).or_insert(a);
            for l in act.monoid().alphabet().letters() {
                if !self.related(act.act_letter(r, l), act.act_letter(a, l)) {
                    return false;
                }
            }
        }
        true
    }
}

/// Smallest congruence on `act` containing `seed`.
pub fn congruence_closure(act: &FiniteAct, seed: &[(usize, usize)]) -> ActCongruence {
    let n = act.len();
    let mut uf = UnionFind::new(n);
    let mut work: Vec<(usize, usize)> = Vec::new();
    for &(a, b) in seed {
        if uf.union(a, b) {
            work.push((a, b));
        }
    }
    let letters: Vec<_> = act.monoid().alphabet().letters().collect();
    while let Some((a, b)) = work.pop() {
        for &l in &letters {
            let (x, y) = (act.act_letter(a, l), act.act_letter(b, l));
            if uf.union(x, y) {
                work.push((x, y));
            }
        }
    }
    ActCongruence::from_keys((0..n).map(|i| uf.find(i)))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn union_find_merges() {
        let mut uf = UnionFind::new(5);
        assert!(uf.union(0, 1));
        assert!(uf.union(3, 4));
        assert!(!uf.union(1, 0));
        assert!(uf.union(1, 4));
        assert_eq!(uf.find(0), uf.find(3));
        assert_ne!(uf.find(2), uf.find(0));
    }

    #[test]
    fn labels_are_normalised() {
        let c = ActCongruence::from_keys([7, 3, 7, 9]);
        assert_eq!(c.labels(), &[0, 1, 0, 2]);
        assert_eq!(c.num_classes(), 3);
    }

    #[test]
    fn refinement_and_intersection() {
        let a = ActCongruence::from_keys([0, 0, 1, 1]);
        let b = ActCongruence::from_keys([0, 0, 0, 1]);
        assert!(!a.is_finer_than(&b));
        let i = a.intersection(&b);
        assert!(i.is_finer_than(&a) && i.is_finer_than(&b));
        assert_eq!(i.labels(), &[0, 0, 1, 2]);
        assert!(ActCongruence::identity(4).is_finer_than(&a));
        assert!(a.is_finer_than(&ActCongruence::universal(4)));
    }
}
