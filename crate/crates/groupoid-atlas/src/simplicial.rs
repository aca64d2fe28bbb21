//! Truncated simplicial sets with explicit degeneracy bookkeeping.
//!
//! Only nondegenerate simplices are stored. A possibly degenerate
//! simplex is a reference: a nondegenerate core together with the
//! monotone surjection that degenerates it. Faces of references are
//! computed by composing monotone maps, so the simplicial identities
//! hold by construction wherever the stored face data is consistent.

use serde::{Deserialize, Serialize};

/// A possibly degenerate simplex: the core cell `(core_dim, core_idx)`
/// degenerated along the monotone surjection `eta` from `[n]` onto
/// `[core_dim]`, where `n + 1 = eta.len()`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SimplexRef {
    pub core_dim: usize,
    pub core_idx: usize,
    pub eta: Vec<u8>,
}

impl SimplexRef {
    pub fn nondegenerate(dim: usize, idx: usize) -> SimplexRef {
        SimplexRef { core_dim: dim, core_idx: idx, eta: (0..=dim as u8).collect() }
    }

    pub fn dim(&self) -> usize {
        self.eta.len() - 1
    }

    pub fn is_degenerate(&self) -> bool {
        self.dim() != self.core_dim
    }

    /// Degeneracy along position `j`, repeating the j-th vertex.
    pub fn degenerate_at(&self, j: usize) -> SimplexRef {
        assert!(j <= self.dim());
        let mut eta = Vec::with_capacity(self.eta.len() + 1);
        for (pos, &v) in self.eta.iter().enumerate() {
            eta.push(v);
            if pos == j {
                eta.push(v);
            }
        }
        SimplexRef { core_dim: self.core_dim, core_idx: self.core_idx, eta }
    }
}

/// A nondegenerate simplex: its faces, one per deleted position, as
/// references into lower dimensions.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Cell {
    pub label: String,
    pub faces: Vec<SimplexRef>,
}

/// A simplicial set holding dimensions `0..=k`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SimplicialSetTrunc {
    pub k: usize,
    pub cells: Vec<Vec<Cell>>,
}

impl SimplicialSetTrunc {
    pub fn counts(&self) -> Vec<usize> {
        self.cells.iter().map(|d| d.len()).collect()
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.cells
            .iter()
            .enumerate()
            .map(|(d, cs)| if d % 2 == 0 { cs.len() as i64 } else { -(cs.len() as i64) })
            .sum()
    }

    pub fn cell(&self, dim: usize, idx: usize) -> &Cell {
        &self.cells[dim][idx]
    }

    /// The i-th face of a possibly degenerate simplex.
    pub fn face(&self, r: &SimplexRef, i: usize) -> SimplexRef {
        let n = r.dim();
        assert!(n >= 1 && i <= n);
        // compose eta with the injection skipping position i
        let theta: Vec<u8> = r
            .eta
            .iter()
            .enumerate()
            .filter(|&(pos, _)| pos != i)
            .map(|(_, &v)| v)
            .collect();
        // the composite misses eta[i], and nothing else, exactly when
        // position i was the only preimage of that value
        let v = r.eta[i];
        if r.eta.iter().filter(|&&x| x == v).count() > 1 {
            return SimplexRef { core_dim: r.core_dim, core_idx: r.core_idx, eta: theta };
        }
        let core_face = &self.cells[r.core_dim][r.core_idx].faces[v as usize];
        // shift values above v down, then push through the core face
        let eta: Vec<u8> = theta
            .iter()
            .map(|&x| core_face.eta[if x > v { x - 1 } else { x } as usize])
            .collect();
        SimplexRef { core_dim: core_face.core_dim, core_idx: core_face.core_idx, eta }
    }

    /// Checks stored shapes and the simplicial identities
    /// `d_i d_j = d_(j-1) d_i` for `i < j` on every cell.
    pub fn verify(&self) -> Result<(), String> {
        if self.cells.len() != self.k + 1 {
            return Err(format!("expected {} dimensions, found {}", self.k + 1, self.cells.len()));
        }
        for (dim, cells) in self.cells.iter().enumerate() {
            for (idx, cell) in cells.iter().enumerate() {
                if cell.faces.len() != if dim == 0 { 0 } else { dim + 1 } {
                    return Err(format!("cell {idx} in dimension {dim} has wrong face count"));
                }
                for (i, f) in cell.faces.iter().enumerate() {
                    if f.dim() != dim - 1 {
                        return Err(format!(
                            "face {i} of cell {idx} in dimension {dim} has wrong dimension"
                        ));
                    }
                    if f.core_dim >= self.cells.len()
                        || f.core_idx >= self.cells[f.core_dim].len()
                    {
                        return Err(format!(
                            "face {i} of cell {idx} in dimension {dim} points nowhere"
                        ));
                    }
                    if !valid_surjection(&f.eta, f.core_dim) {
                        return Err(format!(
                            "face {i} of cell {idx} in dimension {dim} has a bad degeneracy"
                        ));
                    }
                }
            }
        }
        for dim in 2..=self.k {
            for idx in 0..self.cells[dim].len() {
                let r = SimplexRef::nondegenerate(dim, idx);
                for j in 1..=dim {
                    for i in 0..j {
                        let a = self.face(&self.face(&r, j), i);
                        let b = self.face(&self.face(&r, i), j - 1);
                        if a != b {
                            return Err(format!(
                                "identity d_{i} d_{j} fails on cell {idx} in dimension {dim}"
                            ));
                        }
                    }
                }
            }
        }
        Ok(())
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("no non-serializable data")
    }

    pub fn from_json(text: &str) -> Result<SimplicialSetTrunc, String> {
        let s: SimplicialSetTrunc = serde_json::from_str(text).map_err(|e| e.to_string())?;
        s.verify()?;
        Ok(s)
    }

    /// Graphviz description of the 1-skeleton: vertices and
    /// nondegenerate edges, each edge drawn from its 1-face to its
    /// 0-face.
    pub fn to_dot(&self, name: &str) -> String {
        let mut out = String::new();
        out.push_str(&format!("digraph \"{}\" {{\n", name.replace('"', "'")));
        for (idx, cell) in self.cells[0].iter().enumerate() {
            out.push_str(&format!(
                "  v{} [label=\"{}\"];\n",
                idx,
                cell.label.replace('"', "'")
            ));
        }
        if self.k >= 1 {
            for cell in &self.cells[1] {
                let src = &cell.faces[1];
                let tgt = &cell.faces[0];
                out.push_str(&format!(
                    "  v{} -> v{} [label=\"{}\"];\n",
                    src.core_idx,
                    tgt.core_idx,
                    cell.label.replace('"', "'")
                ));
            }
        }
        out.push_str("}\n");
        out
    }
}

fn valid_surjection(eta: &[u8], onto: usize) -> bool {
    if eta.is_empty() || eta[0] != 0 || *eta.last().unwrap() != onto as u8 {
        return false;
    }
    eta.windows(2).all(|w| w[1] == w[0] || w[1] == w[0] + 1)
}
