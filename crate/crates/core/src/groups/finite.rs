use std::collections::{HashMap, HashSet, VecDeque};
use std::fmt::Debug;
use std::hash::Hash;

use super::GroupError;
use crate::algebra::{ProjectivePoint, Scalar};
use crate::pencil::MoebiusMap;

pub const DEFAULT_ORDER_CAP: usize = 10_000;

pub trait GroupElement: Clone + Eq + Hash + Debug {
    /// `self ∘ other`.
    fn compose(&self, other: &Self) -> Self;
    fn inverse(&self) -> Self;
}

impl GroupElement for MoebiusMap {
    fn compose(&self, other: &MoebiusMap) -> MoebiusMap {
        MoebiusMap::compose(self, other)
    }
    fn inverse(&self) -> MoebiusMap {
        MoebiusMap::inverse(self)
    }
}

/// Finite group given by generators, with its elements in breadth-first order from the identity.
#[derive(Clone, Debug)]
pub struct FiniteGroup<E: GroupElement> {
    generators: Vec<E>,
    elements: Vec<E>,
    index: HashMap<E, usize>,
}

impl<E: GroupElement> FiniteGroup<E> {
    pub fn closure(identity: E, generators: &[E], cap: usize) -> Result<FiniteGroup<E>, GroupError> {
        let mut elements = vec![identity.clone()];
        let mut index = HashMap::from([(identity, 0usize)]);
        let mut queue = VecDeque::from([0usize]);
        while let Some(i) = queue.pop_front() {
            for g in generators {
                let h = g.compose(&elements[i]);
                if !index.contains_key(&h) {
                    if elements.len() == cap {
                        return Err(GroupError::TooLarge { cap });
                    }
                    index.insert(h.clone(), elements.len());
                    queue.push_back(elements.len());
                    elements.push(h);
                }
            }
        }
        Ok(FiniteGroup { generators: generators.to_vec(), elements, index })
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn generators(&self) -> &[E] {
        &self.generators
    }

    pub fn elements(&self) -> &[E] {
        &self.elements
    }

    pub fn identity(&self) -> &E {
        &self.elements[0]
    }

    pub fn index_of(&self, e: &E) -> Option<usize> {
        self.index.get(e).copied()
    }

    pub fn contains(&self, e: &E) -> bool {
        self.index.contains_key(e)
    }

    /// Exhaustive closure check under products and inverses.
    pub fn is_closed(&self) -> bool {
        self.elements.iter().all(|a| self.contains(&a.inverse()) && self.elements.iter().all(|b| self.contains(&a.compose(b))))
    }

    pub fn table(&self) -> CayleyTable {
        let n = self.order();
        let mut mul = Vec::with_capacity(n * n);
        for a in &self.elements {
            for b in &self.elements {
                mul.push(self.index[&a.compose(b)] as u32);
            }
        }
        CayleyTable::from_products(n, mul)
    }

    /// Subgroup generated by some elements, sharing nothing with `self` but the element type.
    pub fn subgroup(&self, generators: &[E]) -> Result<FiniteGroup<E>, GroupError> {
        FiniteGroup::closure(self.identity().clone(), generators, self.order().max(1))
    }
}

/// Multiplication table on element indices; index 0 is the identity.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CayleyTable {
    n: usize,
    mul: Vec<u32>,
    inv: Vec<u32>,
    orders: Vec<u32>,
}

impl CayleyTable {
    pub fn from_products(n: usize, mul: Vec<u32>) -> CayleyTable {
        assert_eq!(mul.len(), n * n);
        let mut inv = vec![0u32; n];
        for a in 0..n {
            inv[a] = (0..n).find(|&b| mul[a * n + b] == 0).expect("group table has inverses") as u32;
        }
        let orders = (0..n)
            .map(|a| {
                let mut k = 1;
                let mut cur = a;
                while cur != 0 {
                    cur = mul[cur * n + a] as usize;
                    k += 1;
                }
                k
            })
            .collect();
        CayleyTable { n, mul, inv, orders }
    }

    pub fn order(&self) -> usize {
        self.n
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.mul[a * self.n + b] as usize
    }

    pub fn inv(&self, a: usize) -> usize {
        self.inv[a] as usize
    }

    pub fn element_order(&self, a: usize) -> u32 {
        self.orders[a]
    }

    /// `g h g⁻¹`.
    pub fn conjugate(&self, g: usize, h: usize) -> usize {
        self.mul(self.mul(g, h), self.inv(g))
    }
}

/// Orbit of a point, in first-seen order over the group's elements.
pub fn orbit<T: Scalar>(g: &FiniteGroup<super::MonomialMap>, pt: &ProjectivePoint<T>) -> Vec<ProjectivePoint<T>> {
    let mut seen = HashSet::new();
    let mut out = Vec::new();
    for e in g.elements() {
        let img = e.apply(pt);
        if seen.insert(img.clone()) {
            out.push(img);
        }
    }
    out
}

/// Elements fixing the point.
pub fn stabilizer<T: Scalar>(g: &FiniteGroup<super::MonomialMap>, pt: &ProjectivePoint<T>) -> Vec<usize> {
    (0..g.order()).filter(|&i| g.elements()[i].apply(pt) == *pt).collect()
}
