//! Counting perfect matchings of planar graphs with a Pfaffian orientation.

use std::collections::{BTreeMap, HashMap, VecDeque};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::planar::{planar_embed, PlanarEmbedding};
use crate::error::{Error, Result};
use crate::graph::{edge_key, Rational, WeightedGraph};

/// Edge directions. Faces of the embedding are traversed clockwise, so an edge is clockwise on
/// a face when its direction agrees with that face's dart.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PfaffianOrientation {
    forward: BTreeMap<(usize, usize), bool>,
}

impl PfaffianOrientation {
    /// `(tail, head)` of the edge `uv`.
    pub fn direction(&self, u: usize, v: usize) -> (usize, usize) {
        let (a, b) = edge_key(u, v);
        if self.forward[&(a, b)] {
            (a, b)
        } else {
            (b, a)
        }
    }

    pub fn clockwise_count(&self, face: &[(usize, usize)]) -> usize {
        face.iter()
            .filter(|&&(u, v)| self.direction(u, v) == (u, v))
            .count()
    }

    /// Every face other than the outer one has an odd number of clockwise edges.
    pub fn is_pfaffian_for(&self, emb: &PlanarEmbedding) -> bool {
        let faces = emb.faces();
        let outer = emb.outer_face_index(&faces);
        faces
            .iter()
            .enumerate()
            .filter(|(i, _)| Some(*i) != outer)
            .all(|(_, f)| self.clockwise_count(f) % 2 == 1)
    }
}

/// Spanning tree plus face-by-face fixing along the dual tree, leaves first.
///
/// Requires a connected embedding.
pub fn pfaffian_orient(emb: &PlanarEmbedding) -> PfaffianOrientation {
    let n = emb.vertex_count();
    let mut forward: BTreeMap<(usize, usize), bool> = BTreeMap::new();
    let mut seen = vec![false; n];
    if n > 0 {
        seen[0] = true;
        let mut queue = VecDeque::from([0usize]);
        while let Some(x) = queue.pop_front() {
            for &y in emb.rotation(x) {
                if !seen[y] {
                    seen[y] = true;
                    forward.insert(edge_key(x, y), true);
                    queue.push_back(y);
                }
            }
        }
    }
    let faces = emb.faces();
    let outer = emb.outer_face_index(&faces);
    let mut face_of: HashMap<(usize, usize), usize> = HashMap::new();
    for (i, f) in faces.iter().enumerate() {
        for &d in f {
            face_of.insert(d, i);
        }
    }
    let mut open: Vec<usize> = faces
        .iter()
        .map(|f| {
            f.iter()
                .filter(|&&(u, v)| !forward.contains_key(&edge_key(u, v)))
                .count()
        })
        .collect();
    let mut queue: Vec<usize> = (0..faces.len())
        .filter(|&i| open[i] == 1 && Some(i) != outer)
        .collect();
    while let Some(fi) = queue.pop() {
        if open[fi] != 1 {
            continue;
        }
        let face = &faces[fi];
        let &(a, b) = face
            .iter()
            .find(|&&(u, v)| !forward.contains_key(&edge_key(u, v)))
            .unwrap();
        let clockwise = face
            .iter()
            .filter(|&&(u, v)| match forward.get(&edge_key(u, v)) {
                Some(&fw) => (u < v) == fw,
                None => false,
            })
            .count();
        // Orient a -> b exactly when that makes the clockwise count odd.
        let along = clockwise % 2 == 0;
        forward.insert(edge_key(a, b), (a < b) == along);
        open[fi] = 0;
        let other = face_of[&(b, a)];
        open[other] -= 1;
        if open[other] == 1 && Some(other) != outer {
            queue.push(other);
        }
    }
    debug_assert!(emb
        .rotations()
        .iter()
        .enumerate()
        .all(|(u, r)| r.iter().all(|&v| forward.contains_key(&edge_key(u, v)))));
    PfaffianOrientation { forward }
}

/// Pfaffian of an integer skew-symmetric matrix up to sign, via an exact determinant.
pub fn pfaffian(matrix: &[Vec<BigInt>]) -> BigInt {
    let det = bareiss_determinant(matrix.to_vec());
    assert!(!det.is_negative(), "skew-symmetric determinant is a square");
    let root = det.sqrt();
    assert_eq!(&root * &root, det, "skew-symmetric determinant is a square");
    root
}

/// Fraction-free Gaussian elimination.
fn bareiss_determinant(mut a: Vec<Vec<BigInt>>) -> BigInt {
    let n = a.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            let Some(p) = (k + 1..n).find(|&i| !a[i][k].is_zero()) else {
                return BigInt::zero();
            };
            a.swap(k, p);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let t = &a[i][j] * &a[k][k] - &a[i][k] * &a[k][j];
                a[i][j] = t.div_floor(&prev);
            }
        }
        prev = a[k][k].clone();
    }
    sign * &a[n - 1][n - 1]
}

/// Absolute value of the Pfaffian of a component, which equals the perfect-matching count for
/// nonnegative weights.
fn component_pfaffian(g: &WeightedGraph) -> Rational {
    let emb = planar_embed(g).expect("component was checked planar");
    let orient = pfaffian_orient(&emb);
    let mut denom = BigInt::one();
    for (_, _, w) in g.edges() {
        denom = denom.lcm(w.denom());
    }
    let n = g.vertex_count();
    let mut m = vec![vec![BigInt::zero(); n]; n];
    for (u, v, w) in g.edges() {
        let x = (w * Rational::from_integer(denom.clone())).to_integer();
        let (t, h) = orient.direction(u, v);
        m[t][h] = x.clone();
        m[h][t] = -x;
    }
    Rational::new(pfaffian(&m), num_traits::pow(denom, n / 2))
}

/// Planar perfect-matching count. Components are handled separately and multiplied.
///
/// With mixed-sign weights this is only the absolute value of the Pfaffian.
pub fn count_pm_fkt(g: &WeightedGraph) -> Result<Rational> {
    if planar_embed(g).is_none() {
        return Err(Error::NonPlanarInput);
    }
    let mut total = Rational::one();
    for comp in g.components() {
        if comp.len() % 2 == 1 {
            return Ok(Rational::zero());
        }
        let (sub, _) = g.induced_subgraph(&comp)?;
        total *= component_pfaffian(&sub);
    }
    Ok(total)
}
