use log::warn;

use crate::coloring::Bicoloring;
use crate::edge::Edge;
use crate::error::{Error, Result};
use crate::family::{Family, Provenance};

/// A weight-`d` bicoloring that bisects `a`: `+1` and `-1` on its two
/// smallest members, padded with alternating signs on the largest vertices
/// outside `a`, and on further members of `a` in `+/-` pairs when the
/// outside runs short.
pub fn patch_coloring(a: &Edge, d: usize) -> Result<Bicoloring> {
    let n = a.n();
    let members: Vec<usize> = a.vertices().collect();
    if members.len() < 2 || (d % 2 == 1 && members.len() == n) {
        return Err(Error::Precondition(format!(
            "cannot patch trivial edge {a}"
        )));
    }
    let outside: Vec<usize> = (0..n).filter(|&v| !a.contains(v)).collect();
    let pads = d - 2;
    let (mut from_outside, mut from_inside) = if pads <= outside.len() {
        (pads, 0)
    } else {
        (outside.len(), pads - outside.len())
    };
    if from_inside % 2 == 1 {
        if from_outside == 0 {
            return Err(Error::Precondition(format!(
                "cannot reach weight {d} while bisecting {a}"
            )));
        }
        from_outside -= 1;
        from_inside += 1;
    }
    if from_inside > members.len() - 2 {
        return Err(Error::Precondition(format!(
            "cannot reach weight {d} while bisecting {a}"
        )));
    }
    let mut plus = vec![members[0]];
    let mut minus = vec![members[1]];
    let alternate = |vs: &[usize], plus: &mut Vec<usize>, minus: &mut Vec<usize>| {
        for (i, &v) in vs.iter().enumerate() {
            if i % 2 == 0 {
                plus.push(v);
            } else {
                minus.push(v);
            }
        }
    };
    alternate(
        &outside[outside.len() - from_outside..],
        &mut plus,
        &mut minus,
    );
    alternate(&members[2..2 + from_inside], &mut plus, &mut minus);
    Bicoloring::from_parts(n, plus, minus)
}

/// Appends one patch coloring per uncovered edge, logging each.
pub fn patch(f: &Family, uncovered: &[Edge]) -> Result<Family> {
    let mut out = f.clone();
    for a in uncovered {
        if a.n() != f.n() {
            return Err(Error::DimensionMismatch {
                expected: f.n(),
                found: a.n(),
            });
        }
        let x = patch_coloring(a, f.d())?;
        warn!(
            "patched uncovered edge {a} (n={}, d={}) with {x}",
            f.n(),
            f.d()
        );
        out.push(x, Provenance::Patch)?;
    }
    Ok(out)
}
