use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::graph::Graph;
use crate::error::{Error, Result};
use crate::gf::{make_field_with_cap, FieldElement, FiniteField};
use crate::poly::Poly;

/// Default cap on the number of vertices of a realised graph.
pub const DEFAULT_VERTEX_CAP: u128 = 1_000_000;

/// Encodes vectors of 𝔽_q^k as Σ cᵢ·qⁱ, first coordinate least significant.
#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub struct VectorCodec {
    pub q: usize,
    pub k: usize,
}

impl VectorCodec {
    pub fn size(&self) -> usize {
        self.q.pow(self.k as u32)
    }

    pub fn encode(&self, v: &[FieldElement]) -> usize {
        debug_assert_eq!(v.len(), self.k);
        v.iter()
            .rev()
            .fold(0usize, |acc, c| acc * self.q + c.value() as usize)
    }

    pub fn decode_into(&self, mut n: usize, out: &mut [FieldElement]) {
        for c in out.iter_mut() {
            *c = FieldElement::from_raw((n % self.q) as u32);
            n /= self.q;
        }
    }

    pub fn decode(&self, n: usize) -> Vec<FieldElement> {
        let mut v = vec![FieldElement::ZERO; self.k];
        self.decode_into(n, &mut v);
        v
    }
}

/// On-disk form of a spec: `{p, e, k, f: [[..]], g: [[..]]}` with ascending
/// coefficient encodings.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SpecFile {
    pub p: u64,
    pub e: u32,
    pub k: usize,
    pub f: Vec<Vec<u64>>,
    pub g: Vec<Vec<u64>>,
}

/// Parameters of S(k, q; f₃, g₃, …, f_k, g_k).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SGraphSpec {
    field: FiniteField,
    k: usize,
    fs: Vec<Poly>,
    gs: Vec<Poly>,
}

impl SGraphSpec {
    /// Validates and builds a spec. `fs[j]`, `gs[j]` are f_{j+3}, g_{j+3}.
    pub fn new(field: &FiniteField, k: usize, fs: Vec<Poly>, gs: Vec<Poly>) -> Result<Self> {
        if k < 3 {
            return Err(Error::InvalidSpec(format!("k must be at least 3, got {k}")));
        }
        if fs.len() != k - 2 || gs.len() != k - 2 {
            return Err(Error::InvalidSpec(format!(
                "k = {k} needs {} f and g polynomials, got {} and {}",
                k - 2,
                fs.len(),
                gs.len()
            )));
        }
        if fs.iter().chain(&gs).any(|p| p.field() != field) {
            return Err(Error::InvalidSpec(
                "polynomials over different fields".into(),
            ));
        }
        if field.p() != 2 {
            for (j, g) in gs.iter().enumerate() {
                if let Some(degree) = g.first_even_term() {
                    return Err(Error::OddnessViolation {
                        index: j + 3,
                        degree,
                    });
                }
            }
        }
        Ok(SGraphSpec {
            field: field.clone(),
            k,
            fs,
            gs,
        })
    }

    pub fn from_file(spec: &SpecFile, field_cap: usize) -> Result<Self> {
        let field = make_field_with_cap(spec.p, spec.e, field_cap)?;
        let polys = |list: &[Vec<u64>]| {
            list.iter()
                .map(|c| Poly::from_encodings(&field, c))
                .collect::<Result<Vec<_>>>()
        };
        let fs = polys(&spec.f)?;
        let gs = polys(&spec.g)?;
        Self::new(&field, spec.k, fs, gs)
    }

    pub fn to_file(&self) -> SpecFile {
        SpecFile {
            p: self.field.p() as u64,
            e: self.field.e(),
            k: self.k,
            f: self.fs.iter().map(Poly::encodings).collect(),
            g: self.gs.iter().map(Poly::encodings).collect(),
        }
    }

    /// Monomial spec: f_i = X^{f_exps[i]}, g_i = X^{g_exps[i]}, exponents reduced
    /// modulo X^q − X when they reach q. Returns the spec and whether any
    /// exponent was reduced.
    pub fn monomial(
        field: &FiniteField,
        k: usize,
        f_exps: &[u64],
        g_exps: &[u64],
    ) -> Result<(Self, bool)> {
        let mut reduced = false;
        let mut mono = |n: u64| {
            let (p, r) = Poly::monomial_reduced(field, FieldElement::ONE, n);
            reduced |= r;
            p
        };
        let fs = f_exps.iter().map(|&n| mono(n)).collect();
        let gs = g_exps.iter().map(|&n| mono(n)).collect();
        Ok((Self::new(field, k, fs, gs)?, reduced))
    }

    pub fn field(&self) -> &FiniteField {
        &self.field
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn q(&self) -> usize {
        self.field.q()
    }

    pub fn fs(&self) -> &[Poly] {
        &self.fs
    }

    pub fn gs(&self) -> &[Poly] {
        &self.gs
    }

    pub fn codec(&self) -> VectorCodec {
        VectorCodec {
            q: self.q(),
            k: self.k,
        }
    }

    pub fn degree(&self) -> usize {
        self.q() * (self.q() - 1)
    }

    pub fn vertex_count(&self) -> u128 {
        (self.q() as u128).pow(self.k as u32)
    }

    /// max deg f_i (zero polynomials count as degree 0).
    pub fn d_f(&self) -> usize {
        self.fs
            .iter()
            .map(|p| p.degree().unwrap_or(0))
            .max()
            .unwrap_or(0)
    }

    /// max deg g_i (zero polynomials count as degree 0).
    pub fn d_g(&self) -> usize {
        self.gs
            .iter()
            .map(|p| p.degree().unwrap_or(0))
            .max()
            .unwrap_or(0)
    }

    /// S(k+1, q) obtained by appending one (f, g) pair.
    pub fn extend(&self, f: Poly, g: Poly) -> Result<Self> {
        let mut fs = self.fs.clone();
        let mut gs = self.gs.clone();
        fs.push(f);
        gs.push(g);
        Self::new(&self.field, self.k + 1, fs, gs)
    }

    /// The base spec obtained by dropping the last (f, g) pair.
    pub fn truncate(&self) -> Result<Self> {
        let n = self.k - 3;
        Self::new(
            &self.field,
            self.k - 1,
            self.fs[..n].to_vec(),
            self.gs[..n].to_vec(),
        )
    }

    /// Adjacency straight from the defining relations:
    /// a₁ ≠ b₁ and bᵢ − aᵢ = gᵢ(b₁ − a₁)·fᵢ((b₂ − a₂)/(b₁ − a₁)) for 3 ≤ i ≤ k.
    pub fn adjacent(&self, a: &[FieldElement], b: &[FieldElement]) -> bool {
        let f = &self.field;
        let d1 = f.sub(b[0], a[0]);
        let Ok(inv) = f.inv(d1) else {
            return false;
        };
        let ratio = f.mul(f.sub(b[1], a[1]), inv);
        (2..self.k).all(|i| {
            let rhs = f.mul(self.gs[i - 2].eval(d1), self.fs[i - 2].eval(ratio));
            f.sub(b[i], a[i]) == rhs
        })
    }

    /// The q(q − 1) generators (a, au, g₃(a)f₃(u), …, g_k(a)f_k(u)), a ≠ 0,
    /// ordered by a then u.
    pub fn connection_set(&self) -> Vec<Vec<FieldElement>> {
        let f = &self.field;
        let mut out = Vec::with_capacity(self.degree());
        for a in f.nonzero_elements() {
            let ga: Vec<FieldElement> = self.gs.iter().map(|g| g.eval(a)).collect();
            for u in f.elements() {
                let mut s = Vec::with_capacity(self.k);
                s.push(a);
                s.push(f.mul(a, u));
                for (g, fi) in ga.iter().zip(&self.fs) {
                    s.push(f.mul(*g, fi.eval(u)));
                }
                out.push(s);
            }
        }
        out
    }
}

/// A spec together with its realised connection set.
#[derive(Clone, Debug)]
pub struct SGraph {
    pub spec: SGraphSpec,
    pub connection_set: Vec<Vec<FieldElement>>,
}

pub fn build_s_graph(spec: &SGraphSpec, vertex_cap: u128) -> Result<SGraph> {
    let n = spec.vertex_count();
    if n > vertex_cap {
        return Err(Error::SizeExceeded {
            what: "vertex count q^k",
            value: n,
            cap: vertex_cap,
        });
    }
    Ok(SGraph {
        spec: spec.clone(),
        connection_set: spec.connection_set(),
    })
}

impl SGraph {
    /// Realises the Cayley graph: v ~ v + s for s in the connection set.
    pub fn to_graph(&self) -> Graph {
        let codec = self.spec.codec();
        let field = self.spec.field();
        let adj: Vec<Vec<usize>> = (0..codec.size())
            .into_par_iter()
            .map(|v| {
                let mut coords = vec![FieldElement::ZERO; codec.k];
                codec.decode_into(v, &mut coords);
                let mut sum = coords.clone();
                self.connection_set
                    .iter()
                    .map(|s| {
                        for i in 0..codec.k {
                            sum[i] = field.add(coords[i], s[i]);
                        }
                        codec.encode(&sum)
                    })
                    .collect()
            })
            .collect();
        Graph::from_adjacency(adj)
    }

    /// One line per generator: its k canonical coordinates, space separated.
    pub fn export_connection_set(&self) -> Vec<u8> {
        let mut out = String::new();
        for s in &self.connection_set {
            let row: Vec<String> = s.iter().map(|c| c.value().to_string()).collect();
            out.push_str(&row.join(" "));
            out.push('\n');
        }
        out.into_bytes()
    }
}
