//! Action of automorphisms and of the real structure on the divisor class
//! lattice of the hexagon models.
//!
//! Each of the four sextic models carries exactly six named curves forming a
//! hexagon: consecutive curves meet in one point, non-consecutive ones are
//! disjoint.  The cyclic order is recovered at run time from the actual
//! intersections, so the class bookkeeping below cannot drift away from the
//! geometry in the catalog.  Classes live in the rank-4 lattice with basis
//! `h, e1, e2, e3`, intersection form `diag(1,-1,-1,-1)`, and anticanonical
//! class `3h - e1 - e2 - e3`; the six curves get the classes
//! `e1, h-e1-e2, e2, h-e2-e3, e3, h-e1-e3` around the cycle.

use num_traits::{One, Zero};

use crate::binform::BinForm;
use crate::error::{Error, Result};
use crate::gauss::Rat;
use crate::linalg::{rank_rat, solve_rat};
use crate::map::{CurveImage, RationalMap};
use crate::model::{CurveOnModel, ModelId, ModelPoint, SurfaceModel};

/// Rank of the class lattice of the hexagon models.
pub const LATTICE_RANK: usize = 4;

fn class_row(h: i64, e1: i64, e2: i64, e3: i64) -> Vec<Rat> {
    [h, e1, e2, e3].iter().map(|&v| Rat::from_integer(v.into())).collect()
}

/// Classes of the six hexagon curves, in cyclic order.
fn cycle_classes() -> [Vec<Rat>; 6] {
    [
        class_row(0, 1, 0, 0),
        class_row(1, -1, -1, 0),
        class_row(0, 0, 1, 0),
        class_row(1, 0, -1, -1),
        class_row(0, 0, 0, 1),
        class_row(1, -1, 0, -1),
    ]
}

fn canonical_class() -> Vec<Rat> {
    class_row(-3, 1, 1, 1)
}

/// Whether two distinct parameterized curves meet, decided by pulling the
/// equations of one back along the parameterization of the other.
fn curves_meet(a: &CurveOnModel, b: &CurveOnModel) -> Result<bool> {
    let pull = a.param.flat_components(0);
    let mut forms = Vec::new();
    for eq in &b.equations {
        let restricted = eq.substitute(&pull)?;
        if restricted.is_zero() {
            continue;
        }
        forms.push(BinForm::from_multipoly(&restricted)?);
    }
    if forms.is_empty() {
        return Err(Error::Internal(format!(
            "curve {} lies inside curve {}",
            a.name, b.name
        )));
    }
    let g = BinForm::gcd_all(forms.iter()).expect("nonempty list of forms");
    Ok(g.degree() >= 1)
}

/// The six hexagon curves in cyclic order.  The walk starts at the
/// lexicographically least curve name and proceeds toward its
/// lexicographically least neighbour, which pins the output down uniquely.
pub fn hexagon_cycle(m: &SurfaceModel) -> Result<Vec<String>> {
    if m.curves.len() != 6 {
        return Err(Error::Unsupported(format!(
            "{} does not carry a hexagon of six named curves",
            m.id
        )));
    }
    let mut names: Vec<&str> = m.curves.iter().map(|c| c.name.as_str()).collect();
    names.sort_unstable();
    let curve = |n: &str| m.curves.iter().find(|c| c.name == n).expect("name from list");
    let mut adj = vec![Vec::new(); 6];
    for i in 0..6 {
        for j in i + 1..6 {
            if curves_meet(curve(names[i]), curve(names[j]))? {
                adj[i].push(j);
                adj[j].push(i);
            }
        }
    }
    if adj.iter().any(|n| n.len() != 2) {
        return Err(Error::Unsupported(format!(
            "named curves of {} do not form a hexagon",
            m.id
        )));
    }
    let mut cycle = vec![0usize];
    let mut prev = usize::MAX;
    while cycle.len() < 6 {
        let here = *cycle.last().expect("cycle is nonempty");
        let next = adj[here]
            .iter()
            .copied()
            .filter(|&n| n != prev)
            .min()
            .expect("vertex of degree two");
        prev = here;
        cycle.push(next);
    }
    // The walk must visit every curve once and close up.
    let mut visited = cycle.clone();
    visited.sort_unstable();
    visited.dedup();
    if visited.len() != 6 || !adj[cycle[5]].contains(&0) {
        return Err(Error::Unsupported(format!(
            "named curves of {} do not form a single cycle",
            m.id
        )));
    }
    Ok(cycle.into_iter().map(|i| names[i].to_string()).collect())
}

/// The induced map on the class lattice of a hexagon model.
#[derive(Debug, Clone)]
pub struct PicardAction {
    pub model: ModelId,
    /// Hexagon curve names in cyclic order.
    pub cycle: Vec<String>,
    /// `perm[k]` is the cycle position of the image of `cycle[k]`.
    pub perm: Vec<usize>,
    /// Matrix on the basis `(h, e1, e2, e3)`, acting on column vectors.
    pub matrix: Vec<Vec<Rat>>,
}

fn mat_vec(m: &[Vec<Rat>], v: &[Rat]) -> Vec<Rat> {
    m.iter()
        .map(|row| row.iter().zip(v).map(|(a, b)| a * b).fold(Rat::zero(), |s, t| s + t))
        .collect()
}

fn mat_mul(a: &[Vec<Rat>], b: &[Vec<Rat>]) -> Vec<Vec<Rat>> {
    let n = a.len();
    let k = b[0].len();
    (0..n)
        .map(|r| {
            (0..k)
                .map(|c| (0..b.len()).map(|t| &a[r][t] * &b[t][c]).fold(Rat::zero(), |s, v| s + v))
                .collect()
        })
        .collect()
}

fn transpose(m: &[Vec<Rat>]) -> Vec<Vec<Rat>> {
    (0..m[0].len()).map(|c| m.iter().map(|row| row[c].clone()).collect()).collect()
}

fn intersection_form() -> Vec<Vec<Rat>> {
    let mut g = vec![vec![Rat::zero(); 4]; 4];
    g[0][0] = Rat::one();
    for k in 1..4 {
        g[k][k] = -Rat::one();
    }
    g
}

/// Builds the lattice map from the permutation of the hexagon curves.
/// Fails with `NotDihedral` when the permutation does not respect the cycle.
fn action_from_perm(m: &SurfaceModel, cycle: Vec<String>, perm: Vec<usize>) -> Result<PicardAction> {
    let mut seen = vec![false; 6];
    for &p in &perm {
        if seen[p] {
            return Err(Error::NotAnAutomorphism(format!(
                "curve images repeat on {}",
                m.id
            )));
        }
        seen[p] = true;
    }
    for k in 0..6 {
        let a = perm[k];
        let b = perm[(k + 1) % 6];
        let diff = (a + 6 - b) % 6;
        if diff != 1 && diff != 5 {
            return Err(Error::NotDihedral);
        }
    }
    let classes = cycle_classes();
    // e1, h-e1-e2, e2, e3 are independent; positions 3 and 5 cross-check.
    let chosen = [0usize, 1, 2, 4];
    let a_rows: Vec<Vec<Rat>> = chosen.iter().map(|&k| classes[k].clone()).collect();
    let b_rows: Vec<Vec<Rat>> = chosen.iter().map(|&k| classes[perm[k]].clone()).collect();
    let x = solve_rat(&a_rows, &b_rows).ok_or(Error::SingularMatrix)?;
    let matrix = transpose(&x);
    for k in [3usize, 5] {
        if mat_vec(&matrix, &classes[k]) != classes[perm[k]] {
            return Err(Error::NotDihedral);
        }
    }
    let g = intersection_form();
    let mt = transpose(&matrix);
    if mat_mul(&mat_mul(&mt, &g), &matrix) != g {
        return Err(Error::NotDihedral);
    }
    let kc = canonical_class();
    if mat_vec(&matrix, &kc) != kc {
        return Err(Error::NotDihedral);
    }
    Ok(PicardAction { model: m.id, cycle, perm, matrix })
}

fn image_position(m: &SurfaceModel, cycle: &[String], name: &str, img: CurveImage) -> Result<usize> {
    match img {
        CurveImage::Named(n) => cycle
            .iter()
            .position(|c| *c == n)
            .ok_or_else(|| Error::ImageNotNamed(name.to_string())),
        CurveImage::Point(_) => Err(Error::NotAnAutomorphism(format!(
            "curve {name} is contracted to a point on {}",
            m.id
        ))),
        CurveImage::Unnamed => Err(Error::ImageNotNamed(name.to_string())),
    }
}

/// Class-lattice action of an automorphism given as a rational map of the
/// model to itself.
pub fn automorphism_action(m: &SurfaceModel, f: &RationalMap) -> Result<PicardAction> {
    if f.source() != m.id || f.target() != m.id {
        return Err(Error::NotAnAutomorphism(format!(
            "map goes {} -> {}, expected {} -> {}",
            f.source(),
            f.target(),
            m.id,
            m.id
        )));
    }
    let cycle = hexagon_cycle(m)?;
    let mut perm = Vec::with_capacity(6);
    for name in &cycle {
        let img = f.image_of_curve(m.curve(name)?)?;
        perm.push(image_position(m, &cycle, name, img)?);
    }
    action_from_perm(m, cycle, perm)
}

/// Class-lattice action of the real structure.
pub fn sigma_action(m: &SurfaceModel) -> Result<PicardAction> {
    let cycle = hexagon_cycle(m)?;
    let mut perm = Vec::with_capacity(6);
    for name in &cycle {
        let img = m.sigma.image_of_curve(m.curve(name)?)?;
        perm.push(image_position(m, &cycle, name, img)?);
    }
    action_from_perm(m, cycle, perm)
}

impl PicardAction {
    /// Rank of the fixed sublattice.
    pub fn invariant_rank(&self) -> usize {
        let mut diff = self.matrix.clone();
        for (k, row) in diff.iter_mut().enumerate() {
            row[k] = &row[k] - &Rat::one();
        }
        LATTICE_RANK - rank_rat(diff)
    }

    /// Composition `self . other` of the induced lattice maps.
    pub fn compose(&self, other: &PicardAction) -> PicardAction {
        let perm = (0..6).map(|k| self.perm[other.perm[k]]).collect();
        PicardAction {
            model: self.model,
            cycle: self.cycle.clone(),
            perm,
            matrix: mat_mul(&self.matrix, &other.matrix),
        }
    }

    pub fn is_identity(&self) -> bool {
        self.perm.iter().enumerate().all(|(k, &p)| k == p)
    }

    /// Multiplicative order of the permutation part.
    pub fn order(&self) -> usize {
        let mut acc: Vec<usize> = (0..6).collect();
        for n in 1..=12 {
            acc = acc.iter().map(|&k| self.perm[k]).collect();
            if acc.iter().enumerate().all(|(k, &p)| k == p) {
                return n;
            }
        }
        unreachable!("hexagon symmetries have order at most 6")
    }
}

/// Position of a hexagon symmetry within the dihedral group.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum DihedralClass {
    /// Rotation of the cycle; the identity is the rotation of order 1.
    Rotation { order: usize },
    /// Reflection fixing two opposite curves, listed in cycle order.
    ReflectionVertices { fixed: [String; 2] },
    /// Reflection fixing no curve, exchanging opposite edges.
    ReflectionEdges,
}

pub fn classify_dihedral(a: &PicardAction) -> Result<DihedralClass> {
    let p = &a.perm;
    if (0..6).all(|k| p[k] == (k + p[0]) % 6) {
        let s = p[0];
        let order = match s {
            0 => 1,
            1 | 5 => 6,
            2 | 4 => 3,
            _ => 2,
        };
        return Ok(DihedralClass::Rotation { order });
    }
    let c = p[0];
    if (0..6).all(|k| p[k] == (c + 6 - k) % 6) {
        if c % 2 == 0 {
            let k1 = c / 2;
            let k2 = k1 + 3;
            return Ok(DihedralClass::ReflectionVertices {
                fixed: [a.cycle[k1].clone(), a.cycle[k2].clone()],
            });
        }
        return Ok(DihedralClass::ReflectionEdges);
    }
    Err(Error::NotDihedral)
}

/// Subgroup of the full hexagon symmetry group generated by a set of lattice
/// actions; elements are tracked by their curve permutations.
pub fn generated_perms(gens: &[PicardAction]) -> Vec<Vec<usize>> {
    let mut elems: Vec<Vec<usize>> = vec![(0..6).collect()];
    let mut frontier = elems.clone();
    while let Some(e) = frontier.pop() {
        for g in gens {
            let prod: Vec<usize> = (0..6).map(|k| g.perm[e[k]]).collect();
            if !elems.contains(&prod) {
                elems.push(prod.clone());
                frontier.push(prod);
            }
        }
    }
    elems
}

/// Orbit of one of the candidate points under repeated application of the
/// generators, tracked inside the candidate set.  A generator pushing an
/// orbit point outside the candidates is an escape.
pub fn point_orbit(
    gens: &[RationalMap],
    candidates: &[ModelPoint],
    start: usize,
) -> Result<Vec<usize>> {
    let mut in_orbit = vec![false; candidates.len()];
    in_orbit[start] = true;
    let mut queue = vec![start];
    while let Some(k) = queue.pop() {
        for g in gens {
            let img = g.apply(&candidates[k])?;
            match candidates.iter().position(|c| c.proj_eq(&img)) {
                Some(j) => {
                    if !in_orbit[j] {
                        in_orbit[j] = true;
                        queue.push(j);
                    }
                }
                None => return Err(Error::OrbitEscape(candidates.len())),
            }
        }
    }
    Ok((0..candidates.len()).filter(|&k| in_orbit[k]).collect())
}

/// The six hexagon vertex points of a model, in their catalog order.
pub fn vertex_points(m: &SurfaceModel) -> Result<Vec<ModelPoint>> {
    (0..6).map(|k| m.point(&format!("vertex{k}")).cloned()).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;

    #[test]
    fn hexagon_walk_is_deterministic() {
        let m = catalog::model(ModelId::X4).unwrap();
        let cycle = hexagon_cycle(&m).unwrap();
        assert_eq!(cycle[0], "E_1");
        assert_eq!(cycle.len(), 6);
        let again = hexagon_cycle(&m).unwrap();
        assert_eq!(cycle, again);
    }

    #[test]
    fn sigma_ranks_across_models() {
        let expect = [
            (ModelId::X2P3xP1, 2),
            (ModelId::X2P2xP2, 2),
            (ModelId::X3Q, 3),
            (ModelId::X3F0, 3),
            (ModelId::X4, 4),
        ];
        for (id, rank) in expect {
            let m = catalog::model(id).unwrap();
            let a = sigma_action(&m).unwrap();
            assert_eq!(a.invariant_rank(), rank, "{id}");
        }
    }

    #[test]
    fn non_dihedral_permutation_is_rejected() {
        let m = catalog::model(ModelId::X4).unwrap();
        let cycle = hexagon_cycle(&m).unwrap();
        let bad = vec![0usize, 2, 1, 3, 4, 5];
        assert!(matches!(
            action_from_perm(&m, cycle, bad),
            Err(Error::NotDihedral)
        ));
    }

    #[test]
    fn projection_is_not_an_automorphism() {
        let m = catalog::model(ModelId::X3F0).unwrap();
        let eps = m.param.clone();
        assert!(matches!(
            automorphism_action(&m, &eps),
            Err(Error::NotAnAutomorphism(_))
        ));
    }
}
