//! Finite groups of monomial maps: closure, orbits, subgroup classes, the action
//! on a pencil and its roots, lifts of Möbius maps, semi-invariants, and the
//! class-group minimality test for the variety with symbol `[(1,1),(1,1),(1,1)]`.

mod cl;
mod finite;
mod monomial;
mod pencil_action;
mod semi;
mod subgroups;

pub use cl::{cl_minimality, ClMinimality, ClRepresentation};
pub use finite::{orbit, stabilizer, CayleyTable, FiniteGroup, GroupElement, DEFAULT_ORDER_CAP};
pub use monomial::{MapJson, MonomialMap};
pub use pencil_action::{aut_sequence_decompose, induced_moebius, lift_moebius, moebius_stabilizer, preserves_pencil, AutDecomposition, LiftReport, MoebiusStabilizer};
pub use semi::{semi_invariant_forms, Form, SemiInvariants};
pub use subgroups::{all_subgroups, brute_force_subgroup_count, conjugacy_classes, generated, ElementSet, GroupFingerprint, Subgroup, SubgroupClass};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::algebra::{AlgebraError, Cyclo};
use crate::pencil::PencilError;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum GroupError {
    #[error("invalid group element: {0}")]
    Invalid(String),
    #[error("group is infinite or larger than the cap {cap}")]
    TooLarge { cap: usize },
    #[error("element {element} does not preserve the pencil")]
    NotPreserving { element: String },
    #[error("fewer than 3 points: the stabilizer may be positive-dimensional")]
    Indeterminate,
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("group does not preserve the coordinate pairs {{1,2}}, {{3,4}}, {{5,6}}")]
    NotPartitionPreserving,
    #[error(transparent)]
    Pencil(#[from] PencilError),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}

/// Serialized group: generators act on `n+1` coordinates with scales in Q(ζ_conductor).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GroupJson {
    pub n: usize,
    pub conductor: u32,
    pub generators: Vec<MapJson>,
}

impl GroupJson {
    pub fn parse(&self, conductor_cap: u32) -> Result<Vec<MonomialMap>, GroupError> {
        let cap = conductor_cap.max(self.conductor);
        let gens = self.generators.iter().map(|g| MonomialMap::from_json(g, cap)).collect::<Result<Vec<_>, _>>()?;
        for g in &gens {
            if g.size() != self.n + 1 {
                return Err(GroupError::Invalid(format!("generator {g} acts on {} coordinates, expected {}", g.size(), self.n + 1)));
            }
            if !self.conductor.is_multiple_of(g.conductor()) {
                return Err(GroupError::Invalid(format!("generator {g} needs conductor {}", g.conductor())));
            }
        }
        Ok(gens)
    }

    pub fn from_generators(gens: &[MonomialMap]) -> GroupJson {
        let n = gens.first().map_or(0, |g| g.size() - 1);
        let conductor = gens.iter().fold(1, |a, g| crate::algebra::cyclo::lcm(a, g.conductor()) as u32);
        GroupJson { n, conductor, generators: gens.iter().map(MonomialMap::to_json).collect() }
    }
}

/// Named generator sets for the groups used throughout.
pub mod named {
    use super::*;

    pub const GROUP_FIXTURES: [&str; 7] = ["g80", "g160", "aut-prime", "ghat", "max-cl", "cycle5", "c2-4"];

    /// The 5-cycle `x₁ → x₂ → … → x₅ → x₁` on six coordinates.
    pub fn cycle5() -> MonomialMap {
        MonomialMap::permutation(vec![1, 2, 3, 4, 0, 5]).expect("literal permutation")
    }

    /// Sign changes of even weight on `x₁..x₅`.
    pub fn even_sign_changes() -> Vec<MonomialMap> {
        (0..4).map(|i| MonomialMap::sign_change(6, &[i, i + 1])).collect()
    }

    /// Single sign changes on `x₁..x₅`.
    pub fn all_sign_changes() -> Vec<MonomialMap> {
        (0..5).map(|i| MonomialMap::sign_change(6, &[i])).collect()
    }

    /// `C₂⁴ ⋊ C₅`, order 80.
    pub fn g80() -> Vec<MonomialMap> {
        let mut g = even_sign_changes();
        g.push(cycle5());
        g
    }

    /// `C₂⁵ ⋊ C₅`, order 160.
    pub fn g160() -> Vec<MonomialMap> {
        let mut g = all_sign_changes();
        g.push(cycle5());
        g
    }

    /// `h₁ = (1324)`, `h₂ = (12)`, `h₃ = (56)`, `h₄ = (135)(246)`.
    pub fn ghat() -> Vec<MonomialMap> {
        let cycles: [&[&[usize]]; 4] = [&[&[1, 3, 2, 4]], &[&[1, 2]], &[&[5, 6]], &[&[1, 3, 5], &[2, 4, 6]]];
        cycles.iter().map(|c| MonomialMap::from_cycles(6, c).expect("literal cycles")).collect()
    }

    /// `(x₃:x₄:x₅:x₆:x₁:x₂)` and `(x₁:x₂:ξx₅:ξx₆:ξ²x₃:ξ²x₄)`, `ξ = ζ₃`.
    pub fn max_cl() -> Vec<MonomialMap> {
        let xi = Cyclo::zeta(3);
        let shift = MonomialMap::permutation((0..6).map(|j| (j + 4) % 6).collect()).expect("literal permutation");
        let swap = MonomialMap::new(vec![0, 1, 4, 5, 2, 3], vec![Cyclo::one(), Cyclo::one(), xi.clone(), xi.clone(), &xi * &xi, &xi * &xi]).expect("literal map");
        vec![shift, swap]
    }

    pub fn generators(name: &str) -> Option<Vec<MonomialMap>> {
        Some(match name {
            "g80" => g80(),
            "g160" => g160(),
            "aut-prime" => all_sign_changes(),
            "c2-4" => even_sign_changes(),
            "ghat" => ghat(),
            "max-cl" => max_cl(),
            "cycle5" => vec![cycle5()],
            _ => return None,
        })
    }

    pub fn group(name: &str) -> Option<FiniteGroup<MonomialMap>> {
        let gens = generators(name)?;
        let n = gens[0].size();
        FiniteGroup::closure(MonomialMap::identity(n), &gens, DEFAULT_ORDER_CAP).ok()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn named_orders() {
        for (name, order) in [("g80", 80), ("g160", 160), ("aut-prime", 32), ("c2-4", 16), ("ghat", 48), ("cycle5", 5)] {
            let g = named::group(name).unwrap();
            assert_eq!(g.order(), order, "{name}");
            assert!(g.is_closed());
        }
    }

    #[test]
    fn group_json_round_trip() {
        let gens = named::g80();
        let j = GroupJson::from_generators(&gens);
        let text = serde_json::to_string(&j).unwrap();
        let back: GroupJson = serde_json::from_str(&text).unwrap();
        assert_eq!(back.parse(120).unwrap(), gens);
        assert!(serde_json::from_str::<GroupJson>(r#"{"n":5,"conductor":1,"generators":[],"x":1}"#).is_err());
    }
}
