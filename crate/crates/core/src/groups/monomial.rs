use std::fmt;

use serde::{Deserialize, Serialize};

use super::finite::GroupElement;
use super::GroupError;
use crate::algebra::cyclo::lcm;
use crate::algebra::{Cyclo, Matrix, ProjectivePoint, Scalar};

/// Projective map `xᵢ ↦ sᵢ·x_{π⁻¹(i)}`, i.e. `e_j ↦ s_{π(j)} e_{π(j)}`, with `s₀ = 1`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct MonomialMap {
    perm: Vec<usize>,
    scales: Vec<Cyclo>,
}

fn inverse_perm(perm: &[usize]) -> Vec<usize> {
    let mut inv = vec![0; perm.len()];
    for (j, &p) in perm.iter().enumerate() {
        inv[p] = j;
    }
    inv
}

impl MonomialMap {
    pub fn new(perm: Vec<usize>, scales: Vec<Cyclo>) -> Result<MonomialMap, GroupError> {
        let n = perm.len();
        let mut seen = vec![false; n];
        for &p in &perm {
            if p >= n || seen[p] {
                return Err(GroupError::Invalid(format!("{perm:?} is not a permutation")));
            }
            seen[p] = true;
        }
        if scales.len() != n {
            return Err(GroupError::Invalid(format!("{} scales for {} coordinates", scales.len(), n)));
        }
        if scales.iter().any(|s| s.is_zero()) {
            return Err(GroupError::Invalid("scales must be nonzero".into()));
        }
        Ok(MonomialMap::normalized(perm, scales))
    }

    fn normalized(perm: Vec<usize>, scales: Vec<Cyclo>) -> MonomialMap {
        let inv = scales[0].inv().expect("nonzero scale");
        let scales = scales.iter().map(|s| s * &inv).collect();
        MonomialMap { perm, scales }
    }

    pub fn identity(n: usize) -> MonomialMap {
        MonomialMap { perm: (0..n).collect(), scales: vec![Cyclo::one(); n] }
    }

    pub fn permutation(perm: Vec<usize>) -> Result<MonomialMap, GroupError> {
        let n = perm.len();
        MonomialMap::new(perm, vec![Cyclo::one(); n])
    }

    pub fn diagonal(scales: Vec<Cyclo>) -> Result<MonomialMap, GroupError> {
        MonomialMap::new((0..scales.len()).collect(), scales)
    }

    /// Negate the listed coordinates.
    pub fn sign_change(n: usize, coords: &[usize]) -> MonomialMap {
        let scales = (0..n).map(|i| if coords.contains(&i) { Cyclo::from_int(-1) } else { Cyclo::one() }).collect();
        MonomialMap::normalized((0..n).collect(), scales)
    }

    /// Permutation from disjoint cycles written with 1-based coordinates.
    pub fn from_cycles(n: usize, cycles: &[&[usize]]) -> Result<MonomialMap, GroupError> {
        let mut perm: Vec<usize> = (0..n).collect();
        for cycle in cycles {
            for (k, &a) in cycle.iter().enumerate() {
                let b = cycle[(k + 1) % cycle.len()];
                if a == 0 || b == 0 || a > n || b > n {
                    return Err(GroupError::Invalid(format!("cycle entry out of range 1..={n}")));
                }
                perm[a - 1] = b - 1;
            }
        }
        MonomialMap::permutation(perm)
    }

    pub fn size(&self) -> usize {
        self.perm.len()
    }

    pub fn perm(&self) -> &[usize] {
        &self.perm
    }

    pub fn scales(&self) -> &[Cyclo] {
        &self.scales
    }

    pub fn conductor(&self) -> u32 {
        self.scales.iter().fold(1, |a, s| lcm(a, s.conductor()) as u32)
    }

    pub fn matrix(&self) -> Matrix<Cyclo> {
        let n = self.size();
        let mut m = Matrix::zeros(n, n);
        for j in 0..n {
            let i = self.perm[j];
            m.set(i, j, self.scales[i].clone());
        }
        m
    }

    pub fn apply_vec<T: Scalar>(&self, x: &[T]) -> Vec<T> {
        let inv = inverse_perm(&self.perm);
        (0..self.size()).map(|i| T::from_cyclo(&self.scales[i]).times(&x[inv[i]])).collect()
    }

    pub fn apply<T: Scalar>(&self, p: &ProjectivePoint<T>) -> ProjectivePoint<T> {
        ProjectivePoint::new(self.apply_vec(p.coords())).expect("invertible map")
    }

    pub fn to_json(&self) -> MapJson {
        MapJson { perm: self.perm.clone(), scales: self.scales.iter().map(|s| s.to_string()).collect() }
    }

    pub fn from_json(j: &MapJson, cap: u32) -> Result<MonomialMap, GroupError> {
        let scales = j.scales.iter().map(|s| Cyclo::parse_capped(s, cap)).collect::<Result<Vec<_>, _>>()?;
        MonomialMap::new(j.perm.clone(), scales)
    }
}

impl GroupElement for MonomialMap {
    fn compose(&self, other: &MonomialMap) -> MonomialMap {
        let n = self.size();
        let inv = inverse_perm(&self.perm);
        let perm = (0..n).map(|j| self.perm[other.perm[j]]).collect();
        let scales = (0..n).map(|i| &self.scales[i] * &other.scales[inv[i]]).collect();
        MonomialMap::normalized(perm, scales)
    }

    fn inverse(&self) -> MonomialMap {
        let inv = inverse_perm(&self.perm);
        let scales = (0..self.size()).map(|i| self.scales[self.perm[i]].inv().expect("nonzero scale")).collect();
        MonomialMap::normalized(inv, scales)
    }
}

impl fmt::Display for MonomialMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let inv = inverse_perm(&self.perm);
        let parts: Vec<String> = (0..self.size())
            .map(|i| {
                let s = &self.scales[i];
                if s.is_one() {
                    format!("x{}", inv[i] + 1)
                } else {
                    format!("({s})*x{}", inv[i] + 1)
                }
            })
            .collect();
        write!(f, "({})", parts.join(" : "))
    }
}

/// Serialized map: `perm[j]` is the image of coordinate `j`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MapJson {
    pub perm: Vec<usize>,
    pub scales: Vec<String>,
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn composition_matches_matrices() {
        let a = MonomialMap::new(vec![1, 2, 0], vec![Cyclo::one(), Cyclo::from_int(2), Cyclo::zeta(3)]).unwrap();
        let b = MonomialMap::new(vec![0, 2, 1], vec![Cyclo::from_int(3), Cyclo::one(), Cyclo::from_int(-1)]).unwrap();
        let ab = a.compose(&b);
        let m = a.matrix().mul(&b.matrix());
        let col = ab.perm().iter().position(|&i| i == 0).unwrap();
        let scale = m.get(0, col).clone();
        assert_eq!(ab.matrix().scale(&scale), m);
        assert_eq!(a.compose(&a.inverse()), MonomialMap::identity(3));
        let x = vec![Cyclo::from_int(1), Cyclo::from_int(5), Cyclo::from_int(7)];
        assert_eq!(a.apply_vec(&x), a.matrix().mul_vec(&x));
    }

    #[test]
    fn cycles_are_one_based() {
        let h = MonomialMap::from_cycles(6, &[&[1, 3, 2, 4]]).unwrap();
        assert_eq!(h.perm(), &[2, 3, 1, 0, 4, 5]);
    }
}
