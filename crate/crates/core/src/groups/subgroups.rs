use std::collections::{BTreeMap, HashMap, VecDeque};
use std::fmt;

use serde::Serialize;

use super::finite::CayleyTable;

/// Set of element indices of a group of known order.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ElementSet {
    bits: Vec<u64>,
}

impl ElementSet {
    pub fn empty(n: usize) -> ElementSet {
        ElementSet { bits: vec![0; n.div_ceil(64)] }
    }

    pub fn insert(&mut self, i: usize) -> bool {
        let (w, b) = (i / 64, i % 64);
        let fresh = self.bits[w] & (1 << b) == 0;
        self.bits[w] |= 1 << b;
        fresh
    }

    pub fn contains(&self, i: usize) -> bool {
        self.bits[i / 64] & (1 << (i % 64)) != 0
    }

    pub fn len(&self) -> usize {
        self.bits.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.bits.iter().enumerate().flat_map(|(w, &word)| (0..64).filter(move |b| word & (1 << b) != 0).map(move |b| w * 64 + b))
    }
}

/// Subgroup generated by `gens` inside the tabled group.
pub fn generated(table: &CayleyTable, gens: &[usize]) -> ElementSet {
    let mut set = ElementSet::empty(table.order());
    set.insert(0);
    let mut queue = VecDeque::from([0usize]);
    while let Some(x) = queue.pop_front() {
        for &g in gens {
            let y = table.mul(g, x);
            if set.insert(y) {
                queue.push_back(y);
            }
        }
    }
    set
}

/// Isomorphism invariants of a finite group.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct GroupFingerprint {
    pub order: usize,
    /// element order ↦ number of elements of that order
    pub element_orders: BTreeMap<u32, usize>,
    pub abelian: bool,
    pub center_order: usize,
    pub derived_order: usize,
}

impl GroupFingerprint {
    pub fn of(table: &CayleyTable, members: &ElementSet) -> GroupFingerprint {
        let elems: Vec<usize> = members.iter().collect();
        let mut element_orders = BTreeMap::new();
        for &e in &elems {
            *element_orders.entry(table.element_order(e)).or_insert(0) += 1;
        }
        let commutes = |a: usize, b: usize| table.mul(a, b) == table.mul(b, a);
        let center_order = elems.iter().filter(|&&a| elems.iter().all(|&b| commutes(a, b))).count();
        let mut commutators: Vec<usize> = Vec::new();
        let mut seen = ElementSet::empty(table.order());
        for &a in &elems {
            for &b in &elems {
                let c = table.mul(table.mul(a, b), table.mul(table.inv(a), table.inv(b)));
                if seen.insert(c) {
                    commutators.push(c);
                }
            }
        }
        let derived_order = generated(table, &commutators).len();
        GroupFingerprint { order: elems.len(), element_orders, abelian: center_order == elems.len(), center_order, derived_order }
    }

    fn count(&self, order: u32) -> usize {
        self.element_orders.get(&order).copied().unwrap_or(0)
    }

    /// Invariant factors `d₁ | d₂ | …` (largest first) of an abelian group.
    fn invariant_factors(&self) -> Vec<u64> {
        let mut primes = Vec::new();
        let mut m = self.order as u64;
        let mut p = 2;
        while m > 1 {
            if m.is_multiple_of(p) {
                primes.push(p);
                while m.is_multiple_of(p) {
                    m /= p;
                }
            }
            p += 1;
        }
        // per prime: #{x : x^{p^k} = 1} = p^{Σ min(k, e_i)}
        let mut columns: Vec<Vec<u64>> = Vec::new();
        for &p in &primes {
            let mut levels = vec![0u32];
            let mut k = 1;
            loop {
                let pk = p.pow(k);
                let n: usize = self.element_orders.iter().filter(|(o, _)| pk % (**o as u64) == 0).map(|(_, c)| *c).sum();
                let s = (n as f64).log(p as f64).round() as u32;
                if s == *levels.last().unwrap() {
                    break;
                }
                levels.push(s);
                k += 1;
            }
            // exponents e_i: #{i : e_i ≥ k} = levels[k] − levels[k−1]
            let mut exps = Vec::new();
            let widths: Vec<u32> = levels.windows(2).map(|w| w[1] - w[0]).collect();
            let rank = widths.first().copied().unwrap_or(0);
            for i in 0..rank {
                exps.push(widths.iter().filter(|&&w| w > i).count() as u32);
            }
            columns.push(exps.iter().map(|&e| p.pow(e)).collect());
        }
        let len = columns.iter().map(|c| c.len()).max().unwrap_or(0);
        (0..len).map(|i| columns.iter().map(|c| c.get(i).copied().unwrap_or(1)).product()).collect()
    }

    /// Conventional name, e.g. `C2^3`, `C4xC2`, `D8`, `S4`, `C2^4:C5`.
    pub fn name(&self) -> String {
        if self.order == 1 {
            return "1".into();
        }
        if self.abelian {
            let factors = self.invariant_factors();
            let mut parts: Vec<String> = Vec::new();
            let mut i = 0;
            while i < factors.len() {
                let j = (i..factors.len()).take_while(|&j| factors[j] == factors[i]).count();
                parts.push(if j == 1 { format!("C{}", factors[i]) } else { format!("C{}^{}", factors[i], j) });
                i += j;
            }
            return parts.join("x");
        }
        let o = |k| self.count(k);
        let known = [
            ("D6", 6, 1, 3, vec![(2, 3), (3, 2)]),
            ("D8", 8, 2, 2, vec![(2, 5), (4, 2)]),
            ("Q8", 8, 2, 2, vec![(2, 1), (4, 6)]),
            ("D10", 10, 1, 5, vec![(2, 5), (5, 4)]),
            ("D12", 12, 2, 3, vec![(2, 7), (3, 2), (6, 2)]),
            ("A4", 12, 1, 4, vec![(2, 3), (3, 8)]),
            ("D8xC2", 16, 4, 2, vec![(2, 11), (4, 4)]),
            ("S4", 24, 1, 12, vec![(2, 9), (3, 8), (4, 6)]),
            ("C2^3:C3", 24, 2, 4, vec![(2, 7), (3, 8), (6, 8)]),
            ("SL(2,3)", 24, 2, 8, vec![(2, 1), (3, 8), (4, 6), (6, 8)]),
            ("C2^3:S3", 48, 2, 12, vec![(2, 19), (3, 8), (4, 12), (6, 8)]),
            ("C2^4:C5", 80, 1, 16, vec![(2, 15), (5, 64)]),
            ("C2^5:C5", 160, 2, 16, vec![(2, 31), (5, 64), (10, 64)]),
        ];
        for (name, order, center, derived, counts) in known {
            let total: usize = 1 + counts.iter().map(|c| c.1).sum::<usize>();
            if self.order == order && self.center_order == center && self.derived_order == derived && total == order && counts.iter().all(|&(k, c)| o(k) == c) {
                return name.into();
            }
        }
        format!("unidentified group of order {}", self.order)
    }

    /// Other common names for the same type.
    pub fn aliases(&self) -> Vec<&'static str> {
        match self.name().as_str() {
            "D6" => vec!["S3"],
            "C2^2" => vec!["D4"],
            "C2^3:S3" => vec!["C2xS4"],
            "C2^3:C3" => vec!["C2xA4"],
            "D12" => vec!["C2xS3"],
            _ => vec![],
        }
    }
}

impl fmt::Display for GroupFingerprint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let orders: Vec<String> = self.element_orders.iter().map(|(k, c)| format!("{k}:{c}")).collect();
        write!(
            f,
            "{} (order {}, element orders {{{}}}, center {}, derived {})",
            self.name(),
            self.order,
            orders.join(", "),
            self.center_order,
            self.derived_order
        )
    }
}

#[derive(Clone, Debug)]
pub struct Subgroup {
    pub members: ElementSet,
    pub generators: Vec<usize>,
}

impl Subgroup {
    pub fn order(&self) -> usize {
        self.members.len()
    }
}

/// Every subgroup: cyclic ones, then repeated one-element extensions, deduplicated by element set.
pub fn all_subgroups(table: &CayleyTable) -> Vec<Subgroup> {
    let n = table.order();
    let mut seen: HashMap<ElementSet, usize> = HashMap::new();
    let mut out: Vec<Subgroup> = Vec::new();
    let mut frontier = Vec::new();
    for g in 0..n {
        let gens = if g == 0 { vec![] } else { vec![g] };
        let members = generated(table, &gens);
        if !seen.contains_key(&members) {
            seen.insert(members.clone(), out.len());
            frontier.push(out.len());
            out.push(Subgroup { members, generators: gens });
        }
    }
    while !frontier.is_empty() {
        let mut next = Vec::new();
        for &h in &frontier {
            for g in 0..n {
                if out[h].members.contains(g) {
                    continue;
                }
                let mut gens = out[h].generators.clone();
                gens.push(g);
                let members = generated(table, &gens);
                if !seen.contains_key(&members) {
                    seen.insert(members.clone(), out.len());
                    next.push(out.len());
                    out.push(Subgroup { members, generators: gens });
                }
            }
        }
        frontier = next;
    }
    out.sort_by(|a, b| a.order().cmp(&b.order()).then_with(|| a.members.cmp(&b.members)));
    out
}

/// Subgroups up to conjugacy.
#[derive(Clone, Debug)]
pub struct SubgroupClass {
    pub representative: Subgroup,
    pub fingerprint: GroupFingerprint,
    pub class_size: usize,
    /// Every member of the class.
    pub members: Vec<ElementSet>,
}

fn conjugate_set(table: &CayleyTable, g: usize, s: &ElementSet) -> ElementSet {
    let mut out = ElementSet::empty(table.order());
    for h in s.iter() {
        out.insert(table.conjugate(g, h));
    }
    out
}

pub fn conjugacy_classes(table: &CayleyTable, subgroups: &[Subgroup]) -> Vec<SubgroupClass> {
    let mut assigned = vec![false; subgroups.len()];
    let position: HashMap<&ElementSet, usize> = subgroups.iter().enumerate().map(|(i, s)| (&s.members, i)).collect();
    let mut classes = Vec::new();
    for i in 0..subgroups.len() {
        if assigned[i] {
            continue;
        }
        let mut members: Vec<ElementSet> = Vec::new();
        for g in 0..table.order() {
            let c = conjugate_set(table, g, &subgroups[i].members);
            if !members.contains(&c) {
                let j = *position.get(&c).expect("conjugate of a subgroup is a listed subgroup");
                assigned[j] = true;
                members.push(c);
            }
        }
        members.sort();
        classes.push(SubgroupClass {
            representative: subgroups[i].clone(),
            fingerprint: GroupFingerprint::of(table, &subgroups[i].members),
            class_size: members.len(),
            members,
        });
    }
    classes
}

/// Subgroups by exhaustive search over closed subsets (tiny groups only, oracle use).
pub fn brute_force_subgroup_count(table: &CayleyTable) -> usize {
    let n = table.order();
    assert!(n <= 20, "brute force needs tiny groups");
    let mut count = 0;
    for mask in 0u64..(1 << n) {
        if mask & 1 == 0 {
            continue;
        }
        let ok = (0..n).filter(|i| mask >> i & 1 == 1).all(|a| (0..n).filter(|j| mask >> j & 1 == 1).all(|b| mask >> table.mul(a, b) & 1 == 1));
        if ok {
            count += 1;
        }
    }
    count
}
