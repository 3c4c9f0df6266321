//! Exact sparse linear algebra on tensor powers of the n-dimensional
//! standard space: Kronecker products, factor embeddings, bra/ket pairings
//! and partial traces.

use crate::scalar::ScalarRS;
use serde::Serialize;
use std::collections::BTreeMap;
use std::fmt;

#[derive(Debug, thiserror::Error, PartialEq)]
pub enum TensorError {
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("rank mismatch: {0}")]
    RankMismatch(String),
    #[error("slot out of range: {0}")]
    SlotOutOfRange(String),
}

/// Index into a basis of V^{tensor k}: one factor index per slot, each in 1..=n.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct BasisIndex(pub Vec<u8>);

impl BasisIndex {
    pub fn rank(&self) -> usize {
        self.0.len()
    }
}

impl fmt::Display for BasisIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "({})",
            self.0
                .iter()
                .map(|x| x.to_string())
                .collect::<Vec<_>>()
                .join(",")
        )
    }
}

/// Column tensor: finite map from basis indices to nonzero amplitudes.
#[derive(Clone, PartialEq, Debug)]
pub struct Ket {
    pub n: usize,
    pub rank: usize,
    amplitudes: BTreeMap<BasisIndex, ScalarRS>,
}

/// Row tensor, same storage as `Ket` with dual orientation.
#[derive(Clone, PartialEq, Debug)]
pub struct Bra {
    pub n: usize,
    pub rank: usize,
    amplitudes: BTreeMap<BasisIndex, ScalarRS>,
}

macro_rules! vector_impl {
    ($t:ident) => {
        impl $t {
            pub fn new(n: usize, rank: usize) -> Self {
                Self {
                    n,
                    rank,
                    amplitudes: BTreeMap::new(),
                }
            }

            pub fn basis(n: usize, index: BasisIndex) -> Self {
                let mut v = Self::new(n, index.rank());
                v.add_term(index, ScalarRS::one());
                v
            }

            pub fn add_term(&mut self, index: BasisIndex, value: ScalarRS) {
                debug_assert_eq!(index.rank(), self.rank);
                debug_assert!(index.0.iter().all(|&x| x >= 1 && x as usize <= self.n));
                if value.is_zero() {
                    return;
                }
                match self.amplitudes.entry(index) {
                    std::collections::btree_map::Entry::Vacant(e) => {
                        e.insert(value);
                    }
                    std::collections::btree_map::Entry::Occupied(mut e) => {
                        let sum = e.get().add(&value);
                        if sum.is_zero() {
                            e.remove();
                        } else {
                            *e.get_mut() = sum;
                        }
                    }
                }
            }

            pub fn amplitudes(&self) -> impl Iterator<Item = (&BasisIndex, &ScalarRS)> {
                self.amplitudes.iter()
            }

            pub fn amplitude(&self, index: &BasisIndex) -> ScalarRS {
                self.amplitudes
                    .get(index)
                    .cloned()
                    .unwrap_or_else(ScalarRS::zero)
            }

            pub fn num_terms(&self) -> usize {
                self.amplitudes.len()
            }

            pub fn scale(&self, c: &ScalarRS) -> Self {
                let mut out = Self::new(self.n, self.rank);
                for (i, v) in &self.amplitudes {
                    out.add_term(i.clone(), v.mul(c));
                }
                out
            }
        }
    };
}

vector_impl!(Ket);
vector_impl!(Bra);

/// Sparse operator on V^{tensor k} with exact entries keyed by (row, col).
#[derive(Clone, PartialEq, Debug)]
pub struct SparseOp {
    pub n: usize,
    pub rank: usize,
    entries: BTreeMap<(BasisIndex, BasisIndex), ScalarRS>,
}

impl SparseOp {
    pub fn new(n: usize, rank: usize) -> Self {
        Self {
            n,
            rank,
            entries: BTreeMap::new(),
        }
    }

    pub fn identity(n: usize, rank: usize) -> Self {
        let mut op = Self::new(n, rank);
        for index in all_indices(n, rank) {
            op.add_entry(index.clone(), index, ScalarRS::one());
        }
        op
    }

    /// Unit matrix e_{ij} on a single factor.
    pub fn unit(n: usize, i: u8, j: u8) -> Self {
        let mut op = Self::new(n, 1);
        op.add_entry(BasisIndex(vec![i]), BasisIndex(vec![j]), ScalarRS::one());
        op
    }

    pub fn add_entry(&mut self, row: BasisIndex, col: BasisIndex, value: ScalarRS) {
        debug_assert_eq!(row.rank(), self.rank);
        debug_assert_eq!(col.rank(), self.rank);
        if value.is_zero() {
            return;
        }
        match self.entries.entry((row, col)) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(value);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let sum = e.get().add(&value);
                if sum.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = sum;
                }
            }
        }
    }

    pub fn entries(&self) -> impl Iterator<Item = (&(BasisIndex, BasisIndex), &ScalarRS)> {
        self.entries.iter()
    }

    pub fn entry(&self, row: &BasisIndex, col: &BasisIndex) -> ScalarRS {
        self.entries
            .get(&(row.clone(), col.clone()))
            .cloned()
            .unwrap_or_else(ScalarRS::zero)
    }

    pub fn num_entries(&self) -> usize {
        self.entries.len()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn add(&self, other: &Self) -> Result<Self, TensorError> {
        self.check_shape(other)?;
        let mut out = self.clone();
        for ((r, c), v) in &other.entries {
            out.add_entry(r.clone(), c.clone(), v.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Self) -> Result<Self, TensorError> {
        self.add(&other.scale(&ScalarRS::from_int(-1)))
    }

    pub fn scale(&self, c: &ScalarRS) -> Self {
        let mut out = Self::new(self.n, self.rank);
        for ((r, col), v) in &self.entries {
            out.add_entry(r.clone(), col.clone(), v.mul(c));
        }
        out
    }

    fn check_shape(&self, other: &Self) -> Result<(), TensorError> {
        if self.n != other.n {
            return Err(TensorError::DimensionMismatch(format!(
                "n: {} vs {}",
                self.n, other.n
            )));
        }
        if self.rank != other.rank {
            return Err(TensorError::RankMismatch(format!(
                "rank: {} vs {}",
                self.rank, other.rank
            )));
        }
        Ok(())
    }

    /// Operator composition `self * other` (apply `other` first).
    pub fn mul(&self, other: &Self) -> Result<Self, TensorError> {
        self.check_shape(other)?;
        // Index other's entries by row for the middle contraction.
        let mut by_row: BTreeMap<&BasisIndex, Vec<(&BasisIndex, &ScalarRS)>> = BTreeMap::new();
        for ((r, c), v) in &other.entries {
            by_row.entry(r).or_default().push((c, v));
        }
        let mut out = Self::new(self.n, self.rank);
        for ((r, mid), v1) in &self.entries {
            if let Some(cols) = by_row.get(mid) {
                for (c, v2) in cols {
                    out.add_entry(r.clone(), (*c).clone(), v1.mul(v2));
                }
            }
        }
        Ok(out)
    }

    /// Kronecker product; ranks add.
    pub fn kron(&self, other: &Self) -> Result<Self, TensorError> {
        if self.n != other.n {
            return Err(TensorError::DimensionMismatch(format!(
                "n: {} vs {}",
                self.n, other.n
            )));
        }
        let mut out = Self::new(self.n, self.rank + other.rank);
        for ((r1, c1), v1) in &self.entries {
            for ((r2, c2), v2) in &other.entries {
                let row = BasisIndex(r1.0.iter().chain(r2.0.iter()).cloned().collect());
                let col = BasisIndex(c1.0.iter().chain(c2.0.iter()).cloned().collect());
                out.add_entry(row, col, v1.mul(v2));
            }
        }
        Ok(out)
    }

    /// Embed an operator so it acts as `self` on the listed slots (1-based)
    /// of V^{tensor total} and as the identity elsewhere.
    pub fn embed(&self, slots: &[usize], total: usize) -> Result<Self, TensorError> {
        if slots.len() != self.rank {
            return Err(TensorError::RankMismatch(format!(
                "operator rank {} but {} slots given",
                self.rank,
                slots.len()
            )));
        }
        let mut seen = vec![false; total + 1];
        for &s in slots {
            if s == 0 || s > total || seen[s] {
                return Err(TensorError::SlotOutOfRange(format!(
                    "slot {} (total {})",
                    s, total
                )));
            }
            seen[s] = true;
        }
        let passive: Vec<usize> = (1..=total).filter(|p| !seen[*p]).collect();
        let mut out = Self::new(self.n, total);
        for passive_index in all_indices(self.n, passive.len()) {
            for ((r, c), v) in &self.entries {
                let mut row = vec![0u8; total];
                let mut col = vec![0u8; total];
                for (k, &slot) in slots.iter().enumerate() {
                    row[slot - 1] = r.0[k];
                    col[slot - 1] = c.0[k];
                }
                for (k, &slot) in passive.iter().enumerate() {
                    row[slot - 1] = passive_index.0[k];
                    col[slot - 1] = passive_index.0[k];
                }
                out.add_entry(BasisIndex(row), BasisIndex(col), v.clone());
            }
        }
        Ok(out)
    }

    /// Contract row and column indices over the given slots (1-based).
    /// Tracing every slot yields a rank-0 operator holding the full trace.
    pub fn partial_trace(&self, slots: &[usize]) -> Result<Self, TensorError> {
        let mut traced = vec![false; self.rank + 1];
        for &s in slots {
            if s == 0 || s > self.rank {
                return Err(TensorError::SlotOutOfRange(format!(
                    "slot {} (rank {})",
                    s, self.rank
                )));
            }
            traced[s] = true;
        }
        let kept: Vec<usize> = (1..=self.rank).filter(|p| !traced[*p]).collect();
        let mut out = Self::new(self.n, kept.len());
        for ((r, c), v) in &self.entries {
            let mut diagonal = true;
            for &s in slots {
                if r.0[s - 1] != c.0[s - 1] {
                    diagonal = false;
                    break;
                }
            }
            if !diagonal {
                continue;
            }
            let row = BasisIndex(kept.iter().map(|&s| r.0[s - 1]).collect());
            let col = BasisIndex(kept.iter().map(|&s| c.0[s - 1]).collect());
            out.add_entry(row, col, v.clone());
        }
        Ok(out)
    }

    pub fn trace(&self) -> ScalarRS {
        let all: Vec<usize> = (1..=self.rank).collect();
        let t = self.partial_trace(&all).expect("slots in range");
        t.entry(&BasisIndex(vec![]), &BasisIndex(vec![]))
    }

    /// Apply to a ket: matrix-vector product.
    pub fn apply(&self, ket: &Ket) -> Result<Ket, TensorError> {
        if self.n != ket.n || self.rank != ket.rank {
            return Err(TensorError::RankMismatch("apply".into()));
        }
        let mut out = Ket::new(self.n, self.rank);
        for ((r, c), v) in &self.entries {
            let amp = ket.amplitude(c);
            if !amp.is_zero() {
                out.add_term(r.clone(), v.mul(&amp));
            }
        }
        Ok(out)
    }

    /// Apply a bra on the left: vector-matrix product.
    pub fn apply_bra(&self, bra: &Bra) -> Result<Bra, TensorError> {
        if self.n != bra.n || self.rank != bra.rank {
            return Err(TensorError::RankMismatch("apply_bra".into()));
        }
        let mut out = Bra::new(self.n, self.rank);
        for ((r, c), v) in &self.entries {
            let amp = bra.amplitude(r);
            if !amp.is_zero() {
                out.add_term(c.clone(), amp.mul(v));
            }
        }
        Ok(out)
    }

    pub fn to_json(&self) -> serde_json::Value {
        #[derive(Serialize)]
        struct Entry {
            row: Vec<u8>,
            col: Vec<u8>,
            value: String,
        }
        let entries: Vec<Entry> = self
            .entries
            .iter()
            .map(|((r, c), v)| Entry {
                row: r.0.clone(),
                col: c.0.clone(),
                value: v.to_string(),
            })
            .collect();
        serde_json::json!({
            "n": self.n,
            "rank": self.rank,
            "entries": entries,
        })
    }
}

/// The flip P(u tensor v) = v tensor u on V tensor V.
pub fn permutation_op(n: usize) -> SparseOp {
    let mut op = SparseOp::new(n, 2);
    for i in 1..=n as u8 {
        for j in 1..=n as u8 {
            op.add_entry(BasisIndex(vec![i, j]), BasisIndex(vec![j, i]), ScalarRS::one());
        }
    }
    op
}

/// `<bra| op |ket>`.
pub fn pair(bra: &Bra, op: &SparseOp, ket: &Ket) -> Result<ScalarRS, TensorError> {
    if bra.n != op.n || ket.n != op.n || bra.rank != op.rank || ket.rank != op.rank {
        return Err(TensorError::RankMismatch("pair".into()));
    }
    let mut acc = ScalarRS::zero();
    for ((r, c), v) in op.entries() {
        let left = bra.amplitude(r);
        if left.is_zero() {
            continue;
        }
        let right = ket.amplitude(c);
        if right.is_zero() {
            continue;
        }
        acc = acc.add(&left.mul(v).mul(&right));
    }
    Ok(acc)
}

/// Rank-one operator |ket><bra|.
pub fn outer(ket: &Ket, bra: &Bra) -> SparseOp {
    assert_eq!(ket.n, bra.n);
    assert_eq!(ket.rank, bra.rank);
    let mut op = SparseOp::new(ket.n, ket.rank);
    for (r, kv) in ket.amplitudes() {
        for (c, bv) in bra.amplitudes() {
            op.add_entry(r.clone(), c.clone(), kv.mul(bv));
        }
    }
    op
}

/// Every basis index of V^{tensor rank} in lexicographic (row-major) order.
pub fn all_indices(n: usize, rank: usize) -> Vec<BasisIndex> {
    let mut out = vec![BasisIndex(vec![])];
    for _ in 0..rank {
        let mut next = Vec::with_capacity(out.len() * n);
        for idx in &out {
            for x in 1..=n as u8 {
                let mut v = idx.0.clone();
                v.push(x);
                next.push(BasisIndex(v));
            }
        }
        out = next;
    }
    out
}
