//! Hyperplane classes: edges modulo "opposite in some square".

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use crate::complex::{CubeId, CubicalComplex, Diagonal};

struct DisjointSet {
    parent: Vec<usize>,
    rank: Vec<u8>,
}

impl DisjointSet {
    fn new(n: usize) -> Self {
        Self { parent: (0..n).collect(), rank: vec![0; n] }
    }

    fn find(&mut self, mut node: usize) -> usize {
        let mut root = node;
        while self.parent[root] != root {
            root = self.parent[root];
        }
        while self.parent[node] != root {
            let next = self.parent[node];
            self.parent[node] = root;
            node = next;
        }
        root
    }

    fn union(&mut self, a: usize, b: usize) {
        let (a, b) = (self.find(a), self.find(b));
        if a == b {
            return;
        }
        match self.rank[a].cmp(&self.rank[b]) {
            core::cmp::Ordering::Less => self.parent[a] = b,
            core::cmp::Ordering::Greater => self.parent[b] = a,
            core::cmp::Ordering::Equal => {
                self.parent[b] = a;
                self.rank[a] += 1;
            }
        }
    }
}

/// Partition of the edges into hyperplane classes.
///
/// Classes are numbered by their first edge in declaration order, so the
/// labelling does not depend on edge names.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HyperplanePartition {
    class_of_edge: Vec<usize>,
    classes: Vec<Vec<usize>>,
    labels: Vec<String>,
}

impl HyperplanePartition {
    pub fn class_count(&self) -> usize {
        self.classes.len()
    }

    pub fn class_of(&self, edge: usize) -> usize {
        self.class_of_edge[edge]
    }

    /// Edge indices of each class, ascending.
    pub fn classes(&self) -> &[Vec<usize>] {
        &self.classes
    }

    /// `h<k>` labels, used as indeterminate names.
    pub fn labels(&self) -> &[String] {
        &self.labels
    }
}

impl CubicalComplex {
    pub fn hyperplane_classes(&self) -> HyperplanePartition {
        let m = self.edge_count();
        let mut dsu = DisjointSet::new(m);
        for s in 0..self.count(2) {
            let sq = CubeId::new(2, s);
            for axis in [1, 2] {
                let a = self.face(sq, axis, false).index;
                let b = self.face(sq, axis, true).index;
                dsu.union(a, b);
            }
        }
        let mut class_of_root = vec![usize::MAX; m];
        let mut class_of_edge = vec![0; m];
        let mut classes: Vec<Vec<usize>> = Vec::new();
        for (e, slot) in class_of_edge.iter_mut().enumerate() {
            let r = dsu.find(e);
            if class_of_root[r] == usize::MAX {
                class_of_root[r] = classes.len();
                classes.push(Vec::new());
            }
            *slot = class_of_root[r];
            classes[class_of_root[r]].push(e);
        }
        let labels = (0..classes.len()).map(|k| format!("h{k}")).collect();
        HyperplanePartition { class_of_edge, classes, labels }
    }

    /// The multiset of classes crossed by a diagonal, as per-class exponents.
    pub fn weight(&self, partition: &HyperplanePartition, d: &Diagonal) -> Vec<u32> {
        let mut exps = vec![0u32; partition.class_count()];
        for axis in 1..=d.dim() {
            let ee = self.axis_edge(d.cube, d.corner, axis);
            exps[partition.class_of(ee.edge)] += 1;
        }
        exps
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::fixtures::*;
    use crate::complex::Corner;

    #[test]
    fn fig1_is_discrete() {
        let c = fig1();
        let p = c.hyperplane_classes();
        assert_eq!(p.classes(), [vec![0], vec![1]]);
    }

    #[test]
    fn square_has_two_classes() {
        let c = square();
        let p = c.hyperplane_classes();
        assert_eq!(p.class_count(), 2);
        let h0 = c.cube_by_name("h0").unwrap().index;
        let h1 = c.cube_by_name("h1").unwrap().index;
        let v0 = c.cube_by_name("v0").unwrap().index;
        assert_eq!(p.class_of(h0), p.class_of(h1));
        assert_ne!(p.class_of(h0), p.class_of(v0));
    }

    #[test]
    fn weights() {
        let c = fig1();
        let p = c.hyperplane_classes();
        let ds = c.diagonals();
        assert_eq!(c.weight(&p, &ds[0]), [0, 0]);
        assert_eq!(c.weight(&p, &ds[2]), [1, 0]);
        assert_eq!(c.weight(&p, &ds[3]), [1, 0]);
        let sq = square();
        let p = sq.hyperplane_classes();
        let s = sq.cube_by_name("s").unwrap();
        for corner in Corner::iter_all(2) {
            assert_eq!(sq.weight(&p, &sq.diagonal(s, corner)), [1, 1]);
        }
    }

    #[test]
    fn cube3_has_three_classes_of_four() {
        let p = cube3().hyperplane_classes();
        assert_eq!(p.class_count(), 3);
        assert!(p.classes().iter().all(|c| c.len() == 4));
    }
}
