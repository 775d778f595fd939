//! Diagram to dense operator by greedy pairwise tensor contraction.

use std::collections::HashMap;

use num_complex::Complex;

use super::{DenseOperator, TensorCaps, VerifyError};
use crate::diagram::{Diagram, EdgeKind, NodeId, NodeKind};
use crate::phase::Phase;
use crate::scalar::Scalar;

/// Largest rank an intermediate tensor may reach.
pub const MAX_INTERMEDIATE_RANK: usize = 22;

type Leg = usize;

#[derive(Clone, Debug)]
struct Tensor<T> {
    /// `legs[0]` is the most significant bit of an entry index.
    legs: Vec<Leg>,
    data: Vec<Complex<T>>,
}

fn c<T: Scalar>(re: T) -> Complex<T> {
    Complex::new(re, T::zero())
}

impl<T: Scalar> Tensor<T> {
    fn z_spider(legs: Vec<Leg>, phase: Phase) -> Self {
        let alpha = T::from_f64(phase.to_radians());
        let e = Complex::new(alpha.cos(), alpha.sin());
        let mut data = vec![c(T::zero()); 1 << legs.len()];
        data[0] = c(T::one());
        let last = data.len() - 1;
        data[last] = data[last] + e;
        Tensor { legs, data }
    }

    fn hadamard(a: Leg, b: Leg) -> Self {
        let h = T::FRAC_1_SQRT_2();
        Tensor {
            legs: vec![a, b],
            data: vec![c(h), c(h), c(h), c(-h)],
        }
    }

    fn delta(a: Leg, b: Leg) -> Self {
        let (o, z) = (c(T::one()), c(T::zero()));
        Tensor {
            legs: vec![a, b],
            data: vec![o, z, z, o],
        }
    }

    /// Reorders the legs to `order`, a permutation of `self.legs`.
    fn permuted(&self, order: &[Leg]) -> Self {
        if order == self.legs.as_slice() {
            return self.clone();
        }
        let n = self.legs.len();
        let shift: Vec<usize> = order
            .iter()
            .map(|l| n - 1 - self.legs.iter().position(|x| x == l).expect("leg present"))
            .collect();
        let data = (0..self.data.len())
            .map(|j| {
                let old = (0..n).fold(0, |acc, k| acc | (((j >> (n - 1 - k)) & 1) << shift[k]));
                self.data[old]
            })
            .collect();
        Tensor {
            legs: order.to_vec(),
            data,
        }
    }

    /// Sums over every leg the two tensors share.
    fn contract(&self, other: &Self) -> Self {
        let shared: Vec<Leg> = self.legs.iter().copied().filter(|l| other.legs.contains(l)).collect();
        let fa: Vec<Leg> = self.legs.iter().copied().filter(|l| !shared.contains(l)).collect();
        let fb: Vec<Leg> = other.legs.iter().copied().filter(|l| !shared.contains(l)).collect();
        let a = self.permuted(&[fa.as_slice(), shared.as_slice()].concat());
        let b = other.permuted(&[shared.as_slice(), fb.as_slice()].concat());
        let (n, k, m) = (1usize << fa.len(), 1usize << shared.len(), 1usize << fb.len());
        let zero = c(T::zero());
        let mut data = vec![zero; n * m];
        for i in 0..n {
            let out = &mut data[i * m..(i + 1) * m];
            for l in 0..k {
                let x = a.data[i * k + l];
                if x == zero {
                    continue;
                }
                for (o, &y) in out.iter_mut().zip(&b.data[l * m..(l + 1) * m]) {
                    *o = *o + x * y;
                }
            }
        }
        Tensor {
            legs: [fa, fb].concat(),
            data,
        }
    }
}

fn result_rank<T>(a: &Tensor<T>, b: &Tensor<T>) -> usize {
    let shared = a.legs.iter().filter(|l| b.legs.contains(l)).count();
    a.legs.len() + b.legs.len() - 2 * shared
}

/// Dense operator of `d` with the default caps.
pub fn diagram_to_operator<T: Scalar>(d: &Diagram) -> Result<DenseOperator<T>, VerifyError> {
    diagram_to_operator_with_caps(d, &TensorCaps::default())
}

/// Dense operator of `d`: rows indexed by outputs, columns by inputs.
/// Z spiders are 1 on all-zeros and `e^{iα}` on all-ones; X spiders are Z
/// spiders with a Hadamard on every leg. No normalization is applied.
pub fn diagram_to_operator_with_caps<T: Scalar>(
    d: &Diagram,
    caps: &TensorCaps,
) -> Result<DenseOperator<T>, VerifyError> {
    let boundaries = d.inputs().len() + d.outputs().len();
    if boundaries > caps.max_boundaries || d.num_nodes() > caps.max_nodes {
        return Err(VerifyError::CapExceeded {
            boundaries,
            nodes: d.num_nodes(),
            caps: *caps,
        });
    }
    let tensors = build_network::<T>(d)?;
    let open: Vec<Leg> = d
        .outputs()
        .iter()
        .chain(d.inputs())
        .map(|b| b.0)
        .collect();
    let t = contract_all(tensors.into_iter().map(Some).collect())?;
    let t = t.permuted(&open);
    Ok(DenseOperator::new(d.outputs().len(), d.inputs().len(), t.data))
}

/// Legs are numbered from `id_bound`; a boundary's open leg is its node id.
fn build_network<T: Scalar>(d: &Diagram) -> Result<Vec<Tensor<T>>, VerifyError> {
    let mut next = d.id_bound();
    let mut fresh = || {
        next += 1;
        next - 1
    };
    let mut tensors = Vec::new();
    // (lower endpoint, higher endpoint) -> leg seen from each end.
    let mut edge_legs: HashMap<(NodeId, NodeId), (Leg, Leg)> = HashMap::new();
    for (u, v, kind) in d.edges() {
        let bu = d.is_boundary(u);
        let bv = d.is_boundary(v);
        let lu = if bu { u.0 } else { fresh() };
        let lv = if bv { v.0 } else { fresh() };
        match kind {
            EdgeKind::Hadamard => tensors.push(Tensor::hadamard(lu, lv)),
            EdgeKind::Simple if bu && bv => tensors.push(Tensor::delta(lu, lv)),
            EdgeKind::Simple => {
                let l = if bu { lu } else if bv { lv } else { lu };
                edge_legs.insert((u, v), (l, l));
                continue;
            }
        }
        edge_legs.insert((u, v), (lu, lv));
    }
    for v in d.node_ids() {
        let kind = d.kind(v)?;
        let nbrs = d.neighbors(v)?;
        if kind == NodeKind::B {
            if nbrs.len() != 1 {
                return Err(VerifyError::DanglingBoundary(v));
            }
            continue;
        }
        let mut legs = Vec::with_capacity(nbrs.len());
        for &(w, _) in nbrs {
            let (lo, hi) = edge_legs[&(v.min(w), v.max(w))];
            let leg = if v < w { lo } else { hi };
            if kind == NodeKind::X {
                let inner = fresh();
                tensors.push(Tensor::hadamard(inner, leg));
                legs.push(inner);
            } else {
                legs.push(leg);
            }
        }
        tensors.push(Tensor::z_spider(legs, d.phase(v)?));
    }
    Ok(tensors)
}

/// Repeatedly contracts the pair sharing a leg whose result has the
/// smallest rank, then joins what is left by outer products.
fn contract_all<T: Scalar>(mut tensors: Vec<Option<Tensor<T>>>) -> Result<Tensor<T>, VerifyError> {
    let mut owners: HashMap<Leg, Vec<usize>> = HashMap::new();
    for (i, t) in tensors.iter().enumerate() {
        for &l in &t.as_ref().expect("all present").legs {
            owners.entry(l).or_default().push(i);
        }
    }
    loop {
        let mut best: Option<(usize, Leg)> = None;
        for (&leg, own) in &owners {
            if let [i, j] = own[..] {
                let (a, b) = (tensors[i].as_ref().unwrap(), tensors[j].as_ref().unwrap());
                let key = (result_rank(a, b), leg);
                if best.is_none_or(|b| key < b) {
                    best = Some(key);
                }
            }
        }
        let Some((rank, leg)) = best else { break };
        if rank > MAX_INTERMEDIATE_RANK {
            return Err(VerifyError::RankExceeded(rank));
        }
        let (i, j) = (owners[&leg][0], owners[&leg][1]);
        let a = tensors[i].take().unwrap();
        let b = tensors[j].take().unwrap();
        let t = a.contract(&b);
        for l in a.legs.iter().chain(&b.legs) {
            if let Some(own) = owners.get_mut(l) {
                own.retain(|&x| x != i && x != j);
                if own.is_empty() {
                    owners.remove(l);
                }
            }
        }
        let k = tensors.len();
        for &l in &t.legs {
            owners.entry(l).or_default().push(k);
        }
        tensors.push(Some(t));
    }
    let mut rest: Vec<Tensor<T>> = tensors.into_iter().flatten().collect();
    rest.sort_by_key(|t| t.legs.len());
    let mut acc = Tensor {
        legs: Vec::new(),
        data: vec![c(T::one())],
    };
    for t in rest {
        if acc.legs.len() + t.legs.len() > MAX_INTERMEDIATE_RANK {
            return Err(VerifyError::RankExceeded(acc.legs.len() + t.legs.len()));
        }
        acc = acc.contract(&t);
    }
    Ok(acc)
}
