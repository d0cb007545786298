//! Deliberately broken variants of builtin data, used as negative controls.
//! Every verification suite is expected to notice each of these; a suite
//! that stays green on a corrupted fixture is itself broken.

use crate::error::Result;
use crate::map::RationalMap;
use crate::model::ModelId;
use crate::poly::MultiPoly;

/// Negates the first component of the first block in every representative.
/// The result usually fails to be an automorphism of the model, which is the
/// point: it is constructed without validation.
pub fn sign_flipped(map: &RationalMap) -> RationalMap {
    let reps: Vec<Vec<Vec<MultiPoly>>> = (0..map.rep_count())
        .map(|k| {
            let mut rep: Vec<Vec<MultiPoly>> =
                map.rep(k).iter().map(|block| block.to_vec()).collect();
            rep[0][0] = rep[0][0].neg();
            rep
        })
        .collect();
    RationalMap::new_unchecked(map.source(), map.target(), reps)
}

/// Swaps the first two components of the first block in every
/// representative, again without validation.
pub fn swapped_components(map: &RationalMap) -> RationalMap {
    let reps: Vec<Vec<Vec<MultiPoly>>> = (0..map.rep_count())
        .map(|k| {
            let mut rep: Vec<Vec<MultiPoly>> =
                map.rep(k).iter().map(|block| block.to_vec()).collect();
            rep[0].swap(0, 1);
            rep
        })
        .collect();
    RationalMap::new_unchecked(map.source(), map.target(), reps)
}

/// Swaps the first two components of the last block in every
/// representative, again without validation.
pub fn swapped_last_block(map: &RationalMap) -> RationalMap {
    let reps: Vec<Vec<Vec<MultiPoly>>> = (0..map.rep_count())
        .map(|k| {
            let mut rep: Vec<Vec<MultiPoly>> =
                map.rep(k).iter().map(|block| block.to_vec()).collect();
            let last = rep.len() - 1;
            rep[last].swap(0, 1);
            rep
        })
        .collect();
    RationalMap::new_unchecked(map.source(), map.target(), reps)
}

/// A corrupted copy of a named catalog generator.
pub fn corrupt_generator(model: ModelId, name: &str) -> Result<RationalMap> {
    let m = crate::catalog::model(model)?;
    Ok(sign_flipped(m.generator(name)?))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;

    #[test]
    fn corrupted_generator_is_detected() {
        let m = catalog::model(ModelId::X4).unwrap();
        let bad = corrupt_generator(ModelId::X4, "alpha1").unwrap();
        assert!(bad.validated().is_err(), "sign flip must break the model equations");
        let good = m.generator("alpha1").unwrap();
        assert!(good.validated().is_ok());
    }

    #[test]
    fn swap_breaks_the_plane_involution() {
        let m = catalog::model(ModelId::P2).unwrap();
        let q = m.generator("quadratic_involution").unwrap();
        let bad = swapped_components(q);
        // Still a valid self-map of the plane, but no longer an involution.
        let sq = bad.after(&bad).unwrap();
        let id = RationalMap::identity(ModelId::P2).unwrap();
        assert!(!sq.equal_on_variety(&id).unwrap());
    }
}
