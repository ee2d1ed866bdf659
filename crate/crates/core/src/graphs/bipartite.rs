use super::graph::Graph;
use super::sgraph::VectorCodec;
use crate::error::{Error, Result};
use crate::gf::{FieldElement, FiniteField};

/// One term c·∏ xⱼ^{eⱼ} over the variables (p₁, l₁, p₂, l₂, …).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Monomial {
    pub coeff: FieldElement,
    pub exps: Vec<u64>,
}

/// Sparse multivariate polynomial: a sum of monomials.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct MPoly {
    pub terms: Vec<Monomial>,
}

impl MPoly {
    pub fn monomial(coeff: FieldElement, exps: Vec<u64>) -> Self {
        MPoly {
            terms: vec![Monomial { coeff, exps }],
        }
    }

    pub fn num_vars(&self) -> usize {
        self.terms
            .iter()
            .map(|t| t.exps.iter().rposition(|&e| e != 0).map_or(0, |i| i + 1))
            .max()
            .unwrap_or(0)
    }

    pub fn eval(&self, field: &FiniteField, vars: &[FieldElement]) -> FieldElement {
        self.terms.iter().fold(FieldElement::ZERO, |acc, t| {
            let term = t
                .exps
                .iter()
                .enumerate()
                .filter(|(_, &e)| e != 0)
                .fold(t.coeff, |m, (j, &e)| field.mul(m, field.pow(vars[j], e)));
            field.add(acc, term)
        })
    }
}

/// Parameters of BΓ(q; h₂, …, h_k): `hs[i − 2]` is hᵢ, a polynomial in
/// p₁, l₁, …, p_{i−1}, l_{i−1}.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BipartiteSpec {
    field: FiniteField,
    k: usize,
    hs: Vec<MPoly>,
}

impl BipartiteSpec {
    pub fn new(field: &FiniteField, k: usize, hs: Vec<MPoly>) -> Result<Self> {
        if k < 2 || hs.len() != k - 1 {
            return Err(Error::InvalidSpec(format!(
                "BΓ_k with k = {k} needs k − 1 ≥ 1 polynomials"
            )));
        }
        for (j, h) in hs.iter().enumerate() {
            let i = j + 2;
            if h.num_vars() > 2 * i - 2 {
                return Err(Error::InvalidSpec(format!(
                    "h_{i} uses more than {} variables",
                    2 * i - 2
                )));
            }
            if h.terms.iter().any(|t| !field.contains(t.coeff)) {
                return Err(Error::InvalidSpec(format!(
                    "h_{i} has a coefficient outside the field"
                )));
            }
        }
        Ok(BipartiteSpec {
            field: field.clone(),
            k,
            hs,
        })
    }

    /// Wenger graph W_m(q): hᵢ = p₁·l₁^{i−1}, 2 ≤ i ≤ m + 1.
    pub fn wenger(field: &FiniteField, m: usize) -> Result<Self> {
        let hs = (2..=m + 1)
            .map(|i| MPoly::monomial(FieldElement::ONE, vec![1, i as u64 - 1]))
            .collect();
        Self::new(field, m + 1, hs)
    }

    /// Linearized Wenger graph L_m(q): hᵢ = p₁^{p^{i−2}}·l₁, 2 ≤ i ≤ m + 1.
    pub fn linearized_wenger(field: &FiniteField, m: usize) -> Result<Self> {
        let p = field.p() as u64;
        let hs = (2..=m + 1)
            .map(|i| MPoly::monomial(FieldElement::ONE, vec![p.pow(i as u32 - 2), 1]))
            .collect();
        Self::new(field, m + 1, hs)
    }

    /// D(4, q) = BΓ(q; p₁l₁, p₁l₂, p₂l₁).
    pub fn d4(field: &FiniteField) -> Result<Self> {
        let one = FieldElement::ONE;
        let hs = vec![
            MPoly::monomial(one, vec![1, 1]),
            MPoly::monomial(one, vec![1, 0, 0, 1]),
            MPoly::monomial(one, vec![0, 1, 1]),
        ];
        Self::new(field, 4, hs)
    }

    pub fn field(&self) -> &FiniteField {
        &self.field
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn codec(&self) -> VectorCodec {
        VectorCodec {
            q: self.field.q(),
            k: self.k,
        }
    }

    /// The unique line through `point` with first coordinate `l1`.
    pub fn line_through(&self, point: &[FieldElement], l1: FieldElement) -> Vec<FieldElement> {
        let f = &self.field;
        let mut line = vec![FieldElement::ZERO; self.k];
        line[0] = l1;
        let mut vars = Vec::with_capacity(2 * self.k);
        vars.push(point[0]);
        vars.push(l1);
        for i in 1..self.k {
            let h = self.hs[i - 1].eval(f, &vars);
            line[i] = f.sub(h, point[i]);
            vars.push(point[i]);
            vars.push(line[i]);
        }
        line
    }

    /// Checks pᵢ + lᵢ = hᵢ(p₁, l₁, …) for all i.
    pub fn incident(&self, point: &[FieldElement], line: &[FieldElement]) -> bool {
        let f = &self.field;
        let mut vars = vec![point[0], line[0]];
        for i in 1..self.k {
            if f.add(point[i], line[i]) != self.hs[i - 1].eval(f, &vars) {
                return false;
            }
            vars.push(point[i]);
            vars.push(line[i]);
        }
        true
    }
}

#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum Side {
    Points,
    Lines,
}

/// A graph whose vertices `0..left` form one part and `left..n` the other.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BipartiteGraph {
    graph: Graph,
    left: usize,
}

impl BipartiteGraph {
    pub fn new(graph: Graph, left: usize) -> Result<Self> {
        if left > graph.n() {
            return Err(Error::NotBipartite);
        }
        for (u, v) in graph.edges() {
            if (u < left) == (v < left) {
                return Err(Error::NotBipartite);
            }
        }
        Ok(BipartiteGraph { graph, left })
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    /// Size of the first part (points).
    pub fn left(&self) -> usize {
        self.left
    }

    fn range(&self, side: Side) -> std::ops::Range<usize> {
        match side {
            Side::Points => 0..self.left,
            Side::Lines => self.left..self.graph.n(),
        }
    }
}

/// The realised BΓ_k: points are vertices `0..q^k`, lines `q^k..2q^k`, each
/// labelled by the canonical encoding of its coordinate vector.
pub fn build_bipartite(spec: &BipartiteSpec, vertex_cap: u128) -> Result<BipartiteGraph> {
    let codec = spec.codec();
    let half = (codec.q as u128).pow(codec.k as u32);
    if 2 * half > vertex_cap {
        return Err(Error::SizeExceeded {
            what: "vertex count 2q^k",
            value: 2 * half,
            cap: vertex_cap,
        });
    }
    let half = half as usize;
    let mut adj = vec![Vec::with_capacity(codec.q); 2 * half];
    let mut point = vec![FieldElement::ZERO; codec.k];
    for pv in 0..half {
        codec.decode_into(pv, &mut point);
        for l1 in spec.field().elements() {
            let lv = half + codec.encode(&spec.line_through(&point, l1));
            adj[pv].push(lv);
            adj[lv].push(pv);
        }
    }
    BipartiteGraph::new(Graph::from_adjacency(adj), half)
}

/// Distance-two graph on one side, with vertices relabelled to `0..|side|`.
#[derive(Clone, Debug)]
pub struct DistanceTwo {
    pub graph: Graph,
    /// False iff two vertices of the chosen side share two neighbours, which
    /// is exactly when the bipartite graph has a 4-cycle.
    pub four_cycle_free: bool,
}

pub fn distance_two(g: &BipartiteGraph, side: Side) -> DistanceTwo {
    let own = g.range(side);
    let other = g.range(match side {
        Side::Points => Side::Lines,
        Side::Lines => Side::Points,
    });
    let offset = own.start;
    let mut adj: Vec<Vec<usize>> = vec![Vec::new(); own.len()];
    for z in other {
        let nb = g.graph.neighbors(z);
        for &x in nb {
            for &y in nb {
                if x != y {
                    adj[x - offset].push(y - offset);
                }
            }
        }
    }
    let mut four_cycle_free = true;
    for list in adj.iter_mut() {
        list.sort_unstable();
        if list.windows(2).any(|w| w[0] == w[1]) {
            four_cycle_free = false;
        }
    }
    let graph = Graph::from_adjacency(adj);
    if four_cycle_free {
        if let Some(d) = g.graph.regular_degree() {
            assert_eq!(
                graph.regular_degree(),
                Some(d * (d.saturating_sub(1))),
                "C4-free d-regular ⇒ d(d−1)-regular"
            );
        }
    }
    DistanceTwo {
        graph,
        four_cycle_free,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gf::make_field;
    use crate::graphs::DEFAULT_VERTEX_CAP;

    #[test]
    fn hexagon_gives_triangles() {
        let g = Graph::from_edges(6, [(0, 3), (3, 1), (1, 4), (4, 2), (2, 5), (5, 0)]);
        let bg = BipartiteGraph::new(g, 3).unwrap();
        let d2 = distance_two(&bg, Side::Points);
        assert_eq!(d2.graph, Graph::complete(3));
        assert_eq!(distance_two(&bg, Side::Lines).graph, Graph::complete(3));
        assert!(d2.four_cycle_free);
    }

    #[test]
    fn wrong_partition_is_rejected() {
        let g = Graph::cycle(6);
        assert_eq!(BipartiteGraph::new(g, 3).unwrap_err(), Error::NotBipartite);
    }

    #[test]
    fn unique_neighbour_per_first_coordinate() {
        for (p, e) in [(2u64, 1u32), (3, 1), (2, 2), (5, 1)] {
            let field = make_field(p, e).unwrap();
            for spec in [
                BipartiteSpec::wenger(&field, 2).unwrap(),
                BipartiteSpec::linearized_wenger(&field, 2).unwrap(),
                BipartiteSpec::d4(&field).unwrap(),
            ] {
                let bg = build_bipartite(&spec, DEFAULT_VERTEX_CAP).unwrap();
                let q = field.q();
                let codec = spec.codec();
                assert_eq!(bg.graph().regular_degree(), Some(q));
                assert_eq!(bg.graph().edge_count(), q.pow(spec.k() as u32 + 1));
                for v in 0..bg.graph().n() {
                    let mut firsts: Vec<usize> = bg
                        .graph()
                        .neighbors(v)
                        .iter()
                        .map(|&u| (u % bg.left()) % q)
                        .collect();
                    firsts.sort_unstable();
                    assert_eq!(firsts, (0..q).collect::<Vec<_>>());
                }
                for (u, v) in bg.graph().edges().take(200) {
                    assert!(spec.incident(&codec.decode(u), &codec.decode(v - bg.left())));
                }
            }
        }
    }

    #[test]
    fn h_variable_bound_is_checked() {
        let field = make_field(3, 1).unwrap();
        let bad = MPoly::monomial(FieldElement::ONE, vec![0, 0, 1]);
        assert!(BipartiteSpec::new(&field, 2, vec![bad]).is_err());
    }
}
