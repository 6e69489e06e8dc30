use serde::Serialize;

use super::{GroupError, MonomialMap};
use crate::algebra::{Cyclo, Matrix};
use crate::threefold::Plane;

/// Classes of the 8 planes modulo the three hyperplane relations, with permutation actions.
#[derive(Clone, Debug)]
pub struct ClRepresentation {
    pub planes: Vec<Plane>,
    /// Rows `S_{x₁}−S_{x₂}`, `S_{x₃}−S_{x₄}`, `S_{x₅}−S_{x₆}`.
    pub relations: Matrix<Cyclo>,
    /// Per generator: `action[i]` is the index of the image of plane `i`.
    pub actions: Vec<Vec<usize>>,
}

fn plane_image(perm: &[usize], p: &Plane) -> Plane {
    let mut zeros = p.zeros.map(|c| perm[c]);
    zeros.sort();
    Plane { zeros }
}

impl ClRepresentation {
    pub fn new(gens: &[MonomialMap]) -> Result<ClRepresentation, GroupError> {
        let planes = Plane::all();
        let mut relations = Matrix::zeros(3, 8);
        for pair in 0..3 {
            for (k, pl) in planes.iter().enumerate() {
                let v = if pl.zeros.contains(&(2 * pair)) { 1 } else if pl.zeros.contains(&(2 * pair + 1)) { -1 } else { 0 };
                relations.set(pair, k, Cyclo::from_int(v));
            }
        }
        let mut actions = Vec::with_capacity(gens.len());
        for g in gens {
            let perm = g.perm();
            let keeps_pairs = perm.len() == 6 && (0..3).all(|i| perm[2 * i] / 2 == perm[2 * i + 1] / 2);
            if !keeps_pairs {
                return Err(GroupError::NotPartitionPreserving);
            }
            actions.push(planes.iter().map(|pl| planes.iter().position(|q| *q == plane_image(perm, pl)).expect("pairs are preserved")).collect());
        }
        Ok(ClRepresentation { planes, relations, actions })
    }

    /// Whether every generator maps the relation space into itself.
    pub fn preserves_relations(&self) -> bool {
        let r = self.relations.rank();
        self.actions.iter().all(|act| {
            let mut moved = self.relations.clone();
            for row in 0..3 {
                for (k, &img) in act.iter().enumerate() {
                    moved.set(row, img, self.relations.get(row, k).clone());
                }
            }
            let stacked: Vec<Vec<Cyclo>> = self.relations.to_rows().into_iter().chain(moved.to_rows()).collect();
            Matrix::from_rows(stacked).expect("equal widths").rank() == r
        })
    }

    /// Plane orbits under the generated group.
    pub fn orbits(&self) -> Vec<Vec<usize>> {
        let mut label: Vec<usize> = (0..8).collect();
        fn root(label: &mut [usize], i: usize) -> usize {
            let mut r = i;
            while label[r] != r {
                r = label[r];
            }
            label[i] = r;
            r
        }
        for act in &self.actions {
            for (i, &j) in act.iter().enumerate() {
                let (a, b) = (root(&mut label, i), root(&mut label, j));
                label[a.max(b)] = a.min(b);
            }
        }
        let mut orbits: Vec<Vec<usize>> = Vec::new();
        let mut seen: Vec<Option<usize>> = vec![None; 8];
        for i in 0..8 {
            let r = root(&mut label, i);
            match seen[r] {
                Some(o) => orbits[o].push(i),
                None => {
                    seen[r] = Some(orbits.len());
                    orbits.push(vec![i]);
                }
            }
        }
        orbits
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct ClMinimality {
    /// Rank of the invariant part of the class group.
    pub invariant_rank: usize,
    pub minimal: bool,
    pub plane_orbits: Vec<Vec<Plane>>,
}

/// Invariant class-group rank for a group of coordinate permutations preserving the pairs `{1,2},{3,4},{5,6}`.
pub fn cl_minimality(gens: &[MonomialMap]) -> Result<ClMinimality, GroupError> {
    let rep = ClRepresentation::new(gens)?;
    if !rep.preserves_relations() {
        return Err(GroupError::Invalid("action does not preserve the plane relations".into()));
    }
    let orbits = rep.orbits();
    let mut rows = rep.relations.to_rows();
    for o in &orbits {
        rows.push((0..8).map(|k| Cyclo::from_int(o.contains(&k) as i64)).collect());
    }
    let combined = Matrix::from_rows(rows).expect("equal widths").rank();
    let fixed_relations = 3 + orbits.len() - combined;
    let invariant_rank = orbits.len() - fixed_relations;
    Ok(ClMinimality {
        invariant_rank,
        minimal: invariant_rank == 1,
        plane_orbits: orbits.iter().map(|o| o.iter().map(|&k| rep.planes[k]).collect()).collect(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groups::named;

    #[test]
    fn trivial_and_full() {
        assert_eq!(cl_minimality(&[]).unwrap().invariant_rank, 5);
        let full = cl_minimality(&named::ghat()).unwrap();
        assert!(full.minimal);
        assert_eq!(full.plane_orbits.len(), 1);
        let bad = MonomialMap::from_cycles(6, &[&[2, 3]]).unwrap();
        assert_eq!(cl_minimality(&[bad]).unwrap_err(), GroupError::NotPartitionPreserving);
    }
}
