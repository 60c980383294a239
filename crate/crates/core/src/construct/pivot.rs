//! Pivot indices for odd subsets of an odd circular permutation.
//!
//! For an odd `k`-subset `A` of an odd ring, some member `a_i` splits `A`
//! into two arcs, `a_i .. a_{i+floor(k/2)}` and `a_{i+floor(k/2)+1} .. a_i`,
//! each shorter than half the ring. The pivot is found by laying the cycle
//! family of order `n - 1` on the ring and taking the vertex in the
//! uncolored slot of a rotation that bisects `A`.

use crate::construct::cycle::{slot_sign, uncolored_slot};
use crate::edge::Edge;
use crate::error::{Error, Result};

/// A cyclic order of the vertices `[n]` (0-based).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CircularPerm {
    order: Vec<usize>,
    position: Vec<usize>,
}

impl CircularPerm {
    pub fn new(order: Vec<usize>) -> Result<Self> {
        let n = order.len();
        let mut position = vec![usize::MAX; n];
        for (i, &v) in order.iter().enumerate() {
            if v >= n || position[v] != usize::MAX {
                return Err(Error::Precondition(format!(
                    "{:?} is not a permutation of [{n}]",
                    order.iter().map(|v| v + 1).collect::<Vec<_>>()
                )));
            }
            position[v] = i;
        }
        Ok(CircularPerm { order, position })
    }

    pub fn identity(n: usize) -> Self {
        CircularPerm {
            order: (0..n).collect(),
            position: (0..n).collect(),
        }
    }

    /// Parses a comma-separated list of 1-based vertices.
    pub fn parse(s: &str) -> Result<Self> {
        let order = s
            .split(',')
            .map(str::trim)
            .filter(|t| !t.is_empty())
            .map(|t| match t.parse::<usize>() {
                Ok(v) if v >= 1 => Ok(v - 1),
                _ => Err(Error::Parse(format!("bad vertex `{t}` in permutation"))),
            })
            .collect::<Result<Vec<_>>>()?;
        CircularPerm::new(order)
    }

    pub fn len(&self) -> usize {
        self.order.len()
    }

    pub fn is_empty(&self) -> bool {
        self.order.is_empty()
    }

    pub fn order(&self) -> &[usize] {
        &self.order
    }

    pub fn position(&self, v: usize) -> usize {
        self.position[v]
    }

    /// Clockwise distance from `a` to `b`: one more than the number of
    /// vertices strictly between them.
    pub fn dist(&self, a: usize, b: usize) -> usize {
        let n = self.len();
        (self.position[b] + n - self.position[a]) % n
    }

    /// Members of `a` in the order they appear around the ring, starting
    /// from the ring's first position.
    pub fn ordered_subset(&self, a: &Edge) -> Vec<usize> {
        self.order
            .iter()
            .copied()
            .filter(|&v| a.contains(v))
            .collect()
    }
}

/// True iff index `i` of the ordered subset satisfies both arc conditions.
pub fn is_pivot(sigma: &CircularPerm, ordered: &[usize], i: usize) -> bool {
    let k = ordered.len();
    let half = k / 2;
    let n = sigma.len();
    let a_i = ordered[i % k];
    let mid = ordered[(i + half) % k];
    let after = ordered[(i + half + 1) % k];
    2 * sigma.dist(a_i, mid) < n && 2 * sigma.dist(after, a_i) < n
}

/// Returns an index `i` into `sigma.ordered_subset(a)` satisfying both arc
/// conditions.
pub fn find_pivot(sigma: &CircularPerm, a: &Edge) -> Result<usize> {
    let n = sigma.len();
    if a.n() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            found: a.n(),
        });
    }
    if n.is_multiple_of(2) {
        return Err(Error::Precondition(format!(
            "pivot needs an odd ring, got n={n}"
        )));
    }
    let k = a.len();
    if k.is_multiple_of(2) || k < 3 {
        return Err(Error::Precondition(format!(
            "pivot needs an odd subset of size >= 3, got {a}"
        )));
    }
    let d = n - 1;
    let gap = uncolored_slot(d);
    let ordered = sigma.ordered_subset(a);
    for r in 0..n {
        // Vertex at ring position j sits in slot (j + r) mod n.
        let sum: i64 = ordered
            .iter()
            .map(|&v| slot_sign(d, (sigma.position(v) + r) % n).value() as i64)
            .sum();
        if sum != 0 {
            continue;
        }
        let j = (gap + n - r) % n;
        let pivot = sigma.order()[j];
        let i = ordered.iter().position(|&v| v == pivot).ok_or_else(|| {
            Error::Internal(format!(
                "bisecting rotation {r} leaves vertex {} uncolored outside {a}",
                pivot + 1
            ))
        })?;
        if !is_pivot(sigma, &ordered, i) {
            return Err(Error::Internal(format!(
                "rotation pivot {} fails the arc conditions for {a}",
                pivot + 1
            )));
        }
        return Ok(i);
    }
    Err(Error::Internal(format!(
        "no rotation of the ring bisects {a}"
    )))
}
