//! Combinatorial planar embeddings.
//!
//! Planarity is decided block by block with the Demoucron–Malgrange–Pertuiset path-addition
//! algorithm; block rotations are concatenated at cut vertices.

use std::collections::{HashMap, HashSet, VecDeque};

use crate::graph::{edge_key, WeightedGraph};

/// Rotation system: for every vertex the cyclic order of its neighbours.
///
/// Faces are traced with the rule "after the dart `u -> v` comes `v -> succ_v(u)`".
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PlanarEmbedding {
    rotation: Vec<Vec<usize>>,
    outer: Option<(usize, usize)>,
}

impl PlanarEmbedding {
    /// Wraps a rotation system; the outer face defaults to the longest face.
    pub fn from_rotation(rotation: Vec<Vec<usize>>) -> Self {
        let mut emb = PlanarEmbedding {
            rotation,
            outer: None,
        };
        let faces = emb.faces();
        emb.outer = faces
            .iter()
            .enumerate()
            .max_by_key(|(i, f)| (f.len(), std::cmp::Reverse(*i)))
            .map(|(_, f)| f[0]);
        emb
    }

    pub fn vertex_count(&self) -> usize {
        self.rotation.len()
    }

    pub fn rotation(&self, v: usize) -> &[usize] {
        &self.rotation[v]
    }

    pub fn rotations(&self) -> &[Vec<usize>] {
        &self.rotation
    }

    /// Declares the face containing the dart `u -> v` as the outer face.
    pub fn set_outer_dart(&mut self, u: usize, v: usize) {
        self.outer = Some((u, v));
    }

    pub fn outer_dart(&self) -> Option<(usize, usize)> {
        self.outer
    }

    fn positions(&self) -> Vec<HashMap<usize, usize>> {
        self.rotation
            .iter()
            .map(|r| r.iter().enumerate().map(|(i, &x)| (x, i)).collect())
            .collect()
    }

    /// Neighbour following `u` in the rotation at `v`.
    pub fn succ(&self, v: usize, u: usize) -> usize {
        let r = &self.rotation[v];
        let i = r.iter().position(|&x| x == u).expect("u adjacent to v");
        r[(i + 1) % r.len()]
    }

    /// All faces as dart cycles. Every dart appears in exactly one face.
    pub fn faces(&self) -> Vec<Vec<(usize, usize)>> {
        let pos = self.positions();
        let mut seen: HashSet<(usize, usize)> = HashSet::new();
        let mut faces = Vec::new();
        for u in 0..self.rotation.len() {
            for &v in &self.rotation[u] {
                if seen.contains(&(u, v)) {
                    continue;
                }
                let mut face = Vec::new();
                let (mut a, mut b) = (u, v);
                while seen.insert((a, b)) {
                    face.push((a, b));
                    let r = &self.rotation[b];
                    let next = r[(pos[b][&a] + 1) % r.len()];
                    a = b;
                    b = next;
                }
                faces.push(face);
            }
        }
        faces
    }

    /// Index into [`faces`](Self::faces) of the designated outer face.
    pub fn outer_face_index(&self, faces: &[Vec<(usize, usize)>]) -> Option<usize> {
        let dart = self.outer?;
        faces.iter().position(|f| f.contains(&dart))
    }

    /// Euler's formula per connected component with at least one edge.
    pub fn satisfies_euler(&self) -> bool {
        let n = self.rotation.len();
        let mut comp = vec![usize::MAX; n];
        let mut counts: Vec<(i64, i64, i64)> = Vec::new();
        for s in 0..n {
            if comp[s] != usize::MAX || self.rotation[s].is_empty() {
                continue;
            }
            let id = counts.len();
            counts.push((0, 0, 0));
            comp[s] = id;
            let mut stack = vec![s];
            while let Some(x) = stack.pop() {
                counts[id].0 += 1;
                counts[id].1 += self.rotation[x].len() as i64;
                for &y in &self.rotation[x] {
                    if comp[y] == usize::MAX {
                        comp[y] = id;
                        stack.push(y);
                    }
                }
            }
        }
        for face in self.faces() {
            counts[comp[face[0].0]].2 += 1;
        }
        counts.iter().all(|&(v, d, f)| v - d / 2 + f == 2)
    }

    /// Checks that the rotation system describes exactly the edges of `g`.
    pub fn matches_graph(&self, g: &WeightedGraph) -> bool {
        if self.rotation.len() != g.vertex_count() {
            return false;
        }
        let adj = g.adjacency();
        self.rotation.iter().zip(&adj).all(|(r, a)| {
            let mut r = r.clone();
            r.sort_unstable();
            r == *a
        })
    }
}

/// Embeds `g` in the plane, or returns `None` when it is not planar.
pub fn planar_embed(g: &WeightedGraph) -> Option<PlanarEmbedding> {
    let n = g.vertex_count();
    let adj = g.adjacency();
    let mut rotation: Vec<Vec<usize>> = vec![Vec::new(); n];
    for block in biconnected_blocks(n, &adj) {
        let mut verts: Vec<usize> = block.iter().flat_map(|&(u, v)| [u, v]).collect();
        verts.sort_unstable();
        verts.dedup();
        if block.len() == 1 {
            let (u, v) = block[0];
            rotation[u].push(v);
            rotation[v].push(u);
            continue;
        }
        let local: HashMap<usize, usize> = verts.iter().enumerate().map(|(i, &v)| (v, i)).collect();
        let mut ladj = vec![Vec::new(); verts.len()];
        for &(u, v) in &block {
            ladj[local[&u]].push(local[&v]);
            ladj[local[&v]].push(local[&u]);
        }
        for list in &mut ladj {
            list.sort_unstable();
        }
        let cycle = find_cycle(&ladj)?;
        let rev: Vec<usize> = cycle.iter().rev().copied().collect();
        let faces = extend_embedding(&ladj, vec![cycle, rev], vec![false, false])?;
        for (i, r) in rotation_from_faces(verts.len(), &faces)
            .into_iter()
            .enumerate()
        {
            rotation[verts[i]].extend(r.into_iter().map(|x| verts[x]));
        }
    }
    let emb = PlanarEmbedding::from_rotation(rotation);
    debug_assert!(emb.satisfies_euler());
    emb.satisfies_euler().then_some(emb)
}

pub fn is_planar(g: &WeightedGraph) -> bool {
    planar_embed(g).is_some()
}

/// Edge sets of the biconnected blocks (bridges are single-edge blocks).
pub(crate) fn biconnected_blocks(n: usize, adj: &[Vec<usize>]) -> Vec<Vec<(usize, usize)>> {
    let mut disc = vec![usize::MAX; n];
    let mut low = vec![0usize; n];
    let mut time = 0;
    let mut blocks = Vec::new();
    let mut edge_stack: Vec<(usize, usize)> = Vec::new();
    for root in 0..n {
        if disc[root] != usize::MAX {
            continue;
        }
        disc[root] = time;
        low[root] = time;
        time += 1;
        // (vertex, parent, next neighbour index)
        let mut stack: Vec<(usize, usize, usize)> = vec![(root, usize::MAX, 0)];
        while let Some(&mut (v, parent, ref mut idx)) = stack.last_mut() {
            if *idx < adj[v].len() {
                let w = adj[v][*idx];
                *idx += 1;
                if disc[w] == usize::MAX {
                    edge_stack.push((v, w));
                    disc[w] = time;
                    low[w] = time;
                    time += 1;
                    stack.push((w, v, 0));
                } else if w != parent && disc[w] < disc[v] {
                    edge_stack.push((v, w));
                    low[v] = low[v].min(disc[w]);
                }
            } else {
                stack.pop();
                if let Some(&(p, _, _)) = stack.last() {
                    low[p] = low[p].min(low[v]);
                    if low[v] >= disc[p] {
                        let mut block = Vec::new();
                        while let Some(e) = edge_stack.pop() {
                            block.push(edge_key(e.0, e.1));
                            if e == (p, v) {
                                break;
                            }
                        }
                        block.sort_unstable();
                        blocks.push(block);
                    }
                }
            }
        }
    }
    blocks
}

/// A cycle in a biconnected graph with at least three vertices.
fn find_cycle(adj: &[Vec<usize>]) -> Option<Vec<usize>> {
    let a = *adj[0].first()?;
    // shortest path a -> 0 avoiding the edge 0-a
    let mut prev = vec![usize::MAX; adj.len()];
    prev[a] = a;
    let mut queue = VecDeque::from([a]);
    while let Some(x) = queue.pop_front() {
        for &y in &adj[x] {
            if (x == a && y == 0) || prev[y] != usize::MAX {
                continue;
            }
            prev[y] = x;
            if y == 0 {
                let mut path = vec![0];
                let mut z = x;
                while z != a {
                    path.push(z);
                    z = prev[z];
                }
                path.push(a);
                return Some(path);
            }
            queue.push_back(y);
        }
    }
    None
}

struct Fragment {
    attachments: Vec<usize>,
    /// Non-embedded vertices; empty for a chord.
    interior: Vec<usize>,
}

/// Extends an embedded biconnected subgraph, given by its oriented face cycles, to all of the
/// biconnected graph `adj` by path addition. Faces flagged in `forbidden` never receive new
/// paths. Returns the final oriented faces, or `None` if no extension exists.
pub(crate) fn extend_embedding(
    adj: &[Vec<usize>],
    mut faces: Vec<Vec<usize>>,
    mut forbidden: Vec<bool>,
) -> Option<Vec<Vec<usize>>> {
    let n = adj.len();
    let mut embedded_v = vec![false; n];
    let mut embedded_e: HashSet<(usize, usize)> = HashSet::new();
    for f in &faces {
        for i in 0..f.len() {
            embedded_v[f[i]] = true;
            embedded_e.insert(edge_key(f[i], f[(i + 1) % f.len()]));
        }
    }
    let total_edges: usize = adj.iter().map(Vec::len).sum::<usize>() / 2;
    while embedded_e.len() < total_edges {
        let fragments = fragments(adj, &embedded_v, &embedded_e);
        let mut faces_of: Vec<Vec<usize>> = vec![Vec::new(); n];
        for (fi, f) in faces.iter().enumerate() {
            if forbidden[fi] {
                continue;
            }
            for &v in f {
                faces_of[v].push(fi);
            }
        }
        let mut choice: Option<(usize, usize)> = None;
        for (k, frag) in fragments.iter().enumerate() {
            let mut admissible = faces_of[frag.attachments[0]].clone();
            for &a in &frag.attachments[1..] {
                admissible.retain(|f| faces_of[a].contains(f));
            }
            match admissible.len() {
                0 => return None,
                1 => {
                    choice = Some((k, admissible[0]));
                    break;
                }
                _ => {
                    if choice.is_none() {
                        choice = Some((k, admissible[0]));
                    }
                }
            }
        }
        let (k, fi) = choice?;
        let path = fragment_path(adj, &fragments[k], &embedded_v);
        for w in path.windows(2) {
            embedded_e.insert(edge_key(w[0], w[1]));
        }
        for &v in &path {
            embedded_v[v] = true;
        }
        let face = faces.swap_remove(fi);
        forbidden.swap_remove(fi);
        let (f1, f2) = split_face(&face, &path);
        faces.push(f1);
        faces.push(f2);
        forbidden.push(false);
        forbidden.push(false);
    }
    Some(faces)
}

fn fragments(
    adj: &[Vec<usize>],
    embedded_v: &[bool],
    embedded_e: &HashSet<(usize, usize)>,
) -> Vec<Fragment> {
    let n = adj.len();
    let mut out = Vec::new();
    for u in 0..n {
        if !embedded_v[u] {
            continue;
        }
        for &v in &adj[u] {
            if u < v && embedded_v[v] && !embedded_e.contains(&(u, v)) {
                out.push(Fragment {
                    attachments: vec![u, v],
                    interior: Vec::new(),
                });
            }
        }
    }
    let mut seen = vec![false; n];
    for s in 0..n {
        if embedded_v[s] || seen[s] {
            continue;
        }
        seen[s] = true;
        let mut interior = vec![s];
        let mut attachments = Vec::new();
        let mut i = 0;
        while i < interior.len() {
            let x = interior[i];
            i += 1;
            for &y in &adj[x] {
                if embedded_v[y] {
                    attachments.push(y);
                } else if !seen[y] {
                    seen[y] = true;
                    interior.push(y);
                }
            }
        }
        attachments.sort_unstable();
        attachments.dedup();
        out.push(Fragment {
            attachments,
            interior,
        });
    }
    out
}

/// A path through the fragment joining its first two attachments.
fn fragment_path(adj: &[Vec<usize>], frag: &Fragment, embedded_v: &[bool]) -> Vec<usize> {
    if frag.interior.is_empty() {
        return frag.attachments.clone();
    }
    let (a, b) = (frag.attachments[0], frag.attachments[1]);
    let inside: HashSet<usize> = frag.interior.iter().copied().collect();
    let mut prev: HashMap<usize, usize> = HashMap::new();
    let mut queue = VecDeque::new();
    for &x in &adj[a] {
        if inside.contains(&x) {
            prev.insert(x, a);
            queue.push_back(x);
        }
    }
    while let Some(x) = queue.pop_front() {
        if adj[x].contains(&b) {
            let mut path = vec![b, x];
            let mut z = x;
            while prev[&z] != a {
                z = prev[&z];
                path.push(z);
            }
            path.push(a);
            path.reverse();
            return path;
        }
        for &y in &adj[x] {
            if !embedded_v[y] && inside.contains(&y) && !prev.contains_key(&y) {
                prev.insert(y, x);
                queue.push_back(y);
            }
        }
    }
    unreachable!("fragment of a biconnected graph joins its attachments")
}

/// Splits an oriented face along a path whose endpoints lie on it.
fn split_face(face: &[usize], path: &[usize]) -> (Vec<usize>, Vec<usize>) {
    let k = face.len();
    let a = path[0];
    let b = *path.last().unwrap();
    let ia = face.iter().position(|&x| x == a).unwrap();
    let ib = face.iter().position(|&x| x == b).unwrap();
    let inner = &path[1..path.len() - 1];
    let mut f1 = Vec::new();
    let mut i = ia;
    loop {
        f1.push(face[i]);
        if i == ib {
            break;
        }
        i = (i + 1) % k;
    }
    f1.extend(inner.iter().rev());
    let mut f2 = Vec::new();
    let mut i = ib;
    loop {
        f2.push(face[i]);
        if i == ia {
            break;
        }
        i = (i + 1) % k;
    }
    f2.extend(inner.iter());
    (f1, f2)
}

/// Rotation system of an embedding given by consistently oriented face cycles.
pub(crate) fn rotation_from_faces(n: usize, faces: &[Vec<usize>]) -> Vec<Vec<usize>> {
    let mut succ: Vec<HashMap<usize, usize>> = vec![HashMap::new(); n];
    for f in faces {
        let k = f.len();
        for i in 0..k {
            let (u, v, w) = (f[i], f[(i + 1) % k], f[(i + 2) % k]);
            succ[v].insert(u, w);
        }
    }
    succ.iter()
        .map(|s| {
            let Some(&start) = s.keys().min() else {
                return Vec::new();
            };
            let mut r = vec![start];
            let mut x = s[&start];
            while x != start {
                r.push(x);
                x = s[&x];
            }
            r
        })
        .collect()
}
