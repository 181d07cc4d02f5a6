//! Finite gyrogroups given by an explicit Cayley table.
//!
//! File format (JSON):
//!
//! ```json
//! {"order": 4, "labels": ["0", "1", "2", "3"], "table": [[0,1,2,3], [1,2,3,0], [2,3,0,1], [3,0,1,2]]}
//! ```
//!
//! `table[i][j]` is the index of `element_i ⊕ element_j`; the identity must be
//! index 0. A table is accepted only after an exhaustive axiom sweep.

use std::collections::HashSet;

use rand::Rng;
use serde::{Deserialize, Serialize};
use serde_json::json;

use crate::error::GyroError;
use crate::gyro::{Gyrogroup, Sampled};
use crate::laws::check_axioms;
use crate::report::CheckOutcome;
use crate::sample::SampleSpec;

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct TableFile {
    order: usize,
    labels: Vec<String>,
    table: Vec<Vec<usize>>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteTable {
    order: usize,
    labels: Vec<String>,
    cells: Vec<usize>,
    inverse: Vec<usize>,
}

impl FiniteTable {
    /// Parse and validate a table file.
    pub fn table_load(bytes: &[u8]) -> Result<Self, GyroError> {
        let t = Self::table_load_unvalidated(bytes)?;
        t.validate()?;
        Ok(t)
    }

    /// Parse a table file with shape checks only.
    pub fn table_load_unvalidated(bytes: &[u8]) -> Result<Self, GyroError> {
        let file: TableFile = serde_json::from_slice(bytes)?;
        if file.order != file.labels.len() {
            return Err(GyroError::Shape(format!(
                "order {} but {} labels",
                file.order,
                file.labels.len()
            )));
        }
        Self::unvalidated(file.labels, file.table)
    }

    pub fn from_json_str(s: &str) -> Result<Self, GyroError> {
        Self::table_load(s.as_bytes())
    }

    pub fn to_json(&self) -> String {
        let file = TableFile {
            order: self.order,
            labels: self.labels.clone(),
            table: (0..self.order).map(|i| self.row(i).to_vec()).collect(),
        };
        serde_json::to_string(&file).expect("table serializes")
    }

    /// Build and validate from rows.
    pub fn from_rows(labels: Vec<String>, rows: Vec<Vec<usize>>) -> Result<Self, GyroError> {
        let t = Self::unvalidated(labels, rows)?;
        t.validate()?;
        Ok(t)
    }

    /// Shape checks only. The result may violate the axioms; use it to
    /// inspect broken tables with [`check_axioms`].
    pub fn unvalidated(labels: Vec<String>, rows: Vec<Vec<usize>>) -> Result<Self, GyroError> {
        let n = rows.len();
        if n == 0 {
            return Err(GyroError::Shape("empty table".into()));
        }
        if labels.len() != n {
            return Err(GyroError::Shape(format!("{} labels for {n} rows", labels.len())));
        }
        let mut seen = HashSet::new();
        for l in &labels {
            if !seen.insert(l.as_str()) {
                return Err(GyroError::Shape(format!("duplicate label {l:?}")));
            }
        }
        let mut cells = Vec::with_capacity(n * n);
        for (i, row) in rows.iter().enumerate() {
            if row.len() != n {
                return Err(GyroError::Shape(format!("row {i} has {} entries, expected {n}", row.len())));
            }
            for (j, &v) in row.iter().enumerate() {
                if v >= n {
                    return Err(GyroError::Shape(format!("entry ({i},{j}) = {v} out of range")));
                }
            }
            cells.extend_from_slice(row);
        }
        // ⊖a: the least b with b ⊕ a = 0, or 0 when none exists (G2 then fails)
        let inverse = (0..n)
            .map(|a| (0..n).find(|&b| cells[b * n + a] == 0).unwrap_or(0))
            .collect();
        Ok(Self { order: n, labels, cells, inverse })
    }

    fn validate(&self) -> Result<(), GyroError> {
        if let Some(line) = self.latin_violation() {
            return Err(GyroError::Axiom(Box::new(line)));
        }
        let report = check_axioms(self, SampleSpec::default());
        match report.first_failure() {
            Some(f) => Err(GyroError::Axiom(Box::new(f.to_outcome()))),
            None => Ok(()),
        }
    }

    fn latin_violation(&self) -> Option<CheckOutcome> {
        let n = self.order;
        for i in 0..n {
            let mut row = vec![false; n];
            let mut col = vec![false; n];
            for j in 0..n {
                let r = self.cells[i * n + j];
                if std::mem::replace(&mut row[r], true) {
                    return Some(
                        CheckOutcome::new("latin-square", false)
                            .with_witness(json!({"row": i, "repeated": r}))
                            .with_residual(1.0),
                    );
                }
                let c = self.cells[j * n + i];
                if std::mem::replace(&mut col[c], true) {
                    return Some(
                        CheckOutcome::new("latin-square", false)
                            .with_witness(json!({"column": i, "repeated": c}))
                            .with_residual(1.0),
                    );
                }
            }
        }
        None
    }

    /// ℤₙ under addition mod n.
    pub fn cyclic(n: usize) -> Self {
        let rows = (0..n).map(|a| (0..n).map(|b| (a + b) % n).collect()).collect();
        Self::unvalidated((0..n).map(|i| i.to_string()).collect(), rows).expect("cyclic table")
    }

    /// ℤ₂ × ℤ₂ with bitwise xor.
    pub fn klein_four() -> Self {
        let rows = (0..4).map(|a| (0..4).map(|b| a ^ b).collect()).collect();
        let labels = ["e", "a", "b", "ab"].iter().map(|s| s.to_string()).collect();
        Self::unvalidated(labels, rows).expect("klein table")
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn row(&self, i: usize) -> &[usize] {
        &self.cells[i * self.order..(i + 1) * self.order]
    }

    pub fn element(&self, i: usize) -> Result<usize, GyroError> {
        self.check_carrier(&i)?;
        Ok(i)
    }

    /// Whether every gyration is the identity map.
    pub fn is_associative(&self) -> bool {
        let n = self.order;
        (0..n).all(|a| {
            (0..n).all(|b| (0..n).all(|c| self.op(&a, &self.op(&b, &c)) == self.op(&self.op(&a, &b), &c)))
        })
    }

    /// The permutation `z ↦ gyr[a, b](z)`.
    pub fn gyration(&self, a: usize, b: usize) -> Vec<usize> {
        (0..self.order).map(|z| self.gyr(&a, &b, &z)).collect()
    }

    /// Every distinct gyration permutation.
    pub fn gyrations(&self) -> Vec<Vec<usize>> {
        let mut out: Vec<Vec<usize>> = Vec::new();
        for a in 0..self.order {
            for b in 0..self.order {
                let g = self.gyration(a, b);
                if !out.contains(&g) {
                    out.push(g);
                }
            }
        }
        out.sort();
        out
    }
}

impl Gyrogroup for FiniteTable {
    type Elem = usize;

    fn identity(&self) -> usize {
        0
    }

    fn op(&self, a: &usize, b: &usize) -> usize {
        self.cells[a * self.order + b]
    }

    fn inv(&self, a: &usize) -> usize {
        self.inverse[*a]
    }

    fn contains(&self, a: &usize) -> bool {
        *a < self.order
    }

    fn distance(&self, a: &usize, b: &usize) -> f64 {
        if a == b {
            0.0
        } else {
            1.0
        }
    }

    fn tolerance(&self) -> f64 {
        0.0
    }
}

impl Sampled for FiniteTable {
    fn elements(&self) -> Option<Vec<usize>> {
        Some((0..self.order).collect())
    }

    fn random_element<R: Rng + ?Sized>(&self, rng: &mut R) -> usize {
        rng.random_range(0..self.order)
    }
}
