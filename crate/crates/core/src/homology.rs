//! Betti numbers over GF(2) and the per-component topological signature.

use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use crate::complex::CechComplex;
use crate::error::{invalid, Result};

/// Rank of the boundary map `C_k -> C_{k-1}` over GF(2).
///
/// Columns are sparse sets of facet rows, reduced left to right so that no
/// two surviving columns share a lowest row.
pub fn boundary_rank(complex: &CechComplex, k: usize) -> usize {
    if k == 0 || k > complex.k_max() {
        return 0;
    }
    let rows = complex.count(k - 1);
    let cols = complex.count(k);
    if rows == 0 || cols == 0 {
        return 0;
    }
    let mut owner: Vec<u32> = vec![u32::MAX; rows];
    let mut reduced: Vec<Vec<u32>> = Vec::with_capacity(cols);
    let mut facet = Vec::with_capacity(k);
    let mut scratch = Vec::new();
    let mut rank = 0;
    for simplex in complex.simplices(k) {
        let mut col: Vec<u32> = (0..=k)
            .map(|skip| {
                facet.clear();
                facet.extend(
                    simplex
                        .iter()
                        .enumerate()
                        .filter(|&(i, _)| i != skip)
                        .map(|(_, v)| *v),
                );
                complex
                    .index_of(&facet)
                    .expect("complex is downward closed") as u32
            })
            .collect();
        col.sort_unstable();
        while let Some(&low) = col.last() {
            let o = owner[low as usize];
            if o == u32::MAX {
                owner[low as usize] = reduced.len() as u32;
                rank += 1;
                break;
            }
            symmetric_difference(&col, &reduced[o as usize], &mut scratch);
            core::mem::swap(&mut col, &mut scratch);
        }
        reduced.push(col);
    }
    rank
}

fn symmetric_difference(a: &[u32], b: &[u32], out: &mut Vec<u32>) {
    out.clear();
    let (mut i, mut j) = (0, 0);
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            core::cmp::Ordering::Less => {
                out.push(a[i]);
                i += 1;
            }
            core::cmp::Ordering::Greater => {
                out.push(b[j]);
                j += 1;
            }
            core::cmp::Ordering::Equal => {
                i += 1;
                j += 1;
            }
        }
    }
    out.extend_from_slice(&a[i..]);
    out.extend_from_slice(&b[j..]);
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct BettiVector(pub Vec<usize>);

impl BettiVector {
    pub fn get(&self, k: usize) -> usize {
        self.0.get(k).copied().unwrap_or(0)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.0
            .iter()
            .enumerate()
            .map(|(k, &b)| if k % 2 == 0 { b as i64 } else { -(b as i64) })
            .sum()
    }
}

/// `b_0 .. b_up_to`. Needs simplices one dimension above `up_to`.
pub fn betti(complex: &CechComplex, up_to: usize) -> Result<BettiVector> {
    if up_to + 1 > complex.k_max() {
        return Err(invalid(format!(
            "betti up to dimension {up_to} needs k_max >= {}, complex has {}",
            up_to + 1,
            complex.k_max()
        )));
    }
    let ranks: Vec<usize> = (0..=up_to + 1).map(|k| boundary_rank(complex, k)).collect();
    Ok(BettiVector(
        (0..=up_to)
            .map(|k| complex.count(k) - ranks[k] - ranks[k + 1])
            .collect(),
    ))
}

/// Topological type of one connected component.
///
/// In dimension 1 every component is a point; in dimension 2 components are
/// wedges of circles, classified by `b_1`; in dimension 3 the Betti pair
/// `(b_1, b_2)` is used, which is coarser than homotopy type.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Signature {
    Point,
    Wedge(u32),
    Betti { b1: u32, b2: u32 },
    Oversize,
}

impl fmt::Display for Signature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Signature::Point => f.write_str("pt"),
            Signature::Wedge(k) => write!(f, "w{k}"),
            Signature::Betti { b1, b2 } => write!(f, "b{b1}_{b2}"),
            Signature::Oversize => f.write_str("oversize"),
        }
    }
}

impl FromStr for Signature {
    type Err = crate::Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || invalid(format!("unrecognized signature {s:?}"));
        match s {
            "pt" => Ok(Signature::Point),
            "oversize" => Ok(Signature::Oversize),
            _ => {
                if let Some(k) = s.strip_prefix('w') {
                    return k.parse().map(Signature::Wedge).map_err(|_| bad());
                }
                let rest = s.strip_prefix('b').ok_or_else(bad)?;
                let (b1, b2) = rest.split_once('_').ok_or_else(bad)?;
                Ok(Signature::Betti {
                    b1: b1.parse().map_err(|_| bad())?,
                    b2: b2.parse().map_err(|_| bad())?,
                })
            }
        }
    }
}

impl Signature {
    pub fn label(&self) -> String {
        self.to_string()
    }
}

/// Signature of a connected component from its Betti numbers.
///
/// A 2-dimensional component with `b_2 > 0` (possible on the sphere) keeps
/// both numbers.
pub fn signature(b: &BettiVector, dim: usize) -> Result<Signature> {
    if b.get(0) != 1 {
        return Err(invalid(format!(
            "signatures are per component, got b_0 = {}",
            b.get(0)
        )));
    }
    let b1 = b.get(1) as u32;
    let b2 = b.get(2) as u32;
    match dim {
        1 => Ok(Signature::Point),
        2 if b2 == 0 => Ok(Signature::Wedge(b1)),
        2 | 3 => Ok(Signature::Betti { b1, b2 }),
        _ => Err(invalid(format!("unsupported dimension {dim}"))),
    }
}
