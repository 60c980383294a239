use serde::Serialize;

use crate::coloring::Bicoloring;
use crate::error::{check_order, Error, Result};

/// Where a family member came from.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Provenance {
    /// A `(+block, -block)` pair coloring.
    Pair,
    /// A rotation of a cycle family, possibly embedded on a subset.
    Cycle,
    /// Appended by the patch pass for an edge the construction missed.
    Patch,
    /// Read from a family file, which does not record provenance.
    External,
}

/// An ordered collection of bicolorings sharing `(n, d)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Family {
    n: usize,
    d: usize,
    colorings: Vec<Bicoloring>,
    labels: Vec<Provenance>,
}

impl Family {
    pub fn new(n: usize, d: usize) -> Result<Self> {
        check_order(n, d, n)?;
        Ok(Family {
            n,
            d,
            colorings: Vec::new(),
            labels: Vec::new(),
        })
    }

    pub fn from_colorings<I>(n: usize, d: usize, colorings: I, label: Provenance) -> Result<Self>
    where
        I: IntoIterator<Item = Bicoloring>,
    {
        let mut f = Family::new(n, d)?;
        for x in colorings {
            f.push(x, label)?;
        }
        Ok(f)
    }

    pub fn push(&mut self, x: Bicoloring, label: Provenance) -> Result<()> {
        if x.n() != self.n {
            return Err(Error::DimensionMismatch {
                expected: self.n,
                found: x.n(),
            });
        }
        if x.weight() != self.d {
            return Err(Error::InvalidBicoloring(format!(
                "weight {} in a family of order {}",
                x.weight(),
                self.d
            )));
        }
        self.colorings.push(x);
        self.labels.push(label);
        Ok(())
    }

    /// Appends every member of `other`, keeping its labels.
    pub fn extend_from(&mut self, other: Family) -> Result<()> {
        if (other.n, other.d) != (self.n, self.d) {
            return Err(Error::Precondition(format!(
                "cannot merge family (n={}, d={}) into (n={}, d={})",
                other.n, other.d, self.n, self.d
            )));
        }
        self.colorings.extend(other.colorings);
        self.labels.extend(other.labels);
        Ok(())
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn len(&self) -> usize {
        self.colorings.len()
    }

    pub fn is_empty(&self) -> bool {
        self.colorings.is_empty()
    }

    pub fn colorings(&self) -> &[Bicoloring] {
        &self.colorings
    }

    pub fn labels(&self) -> &[Provenance] {
        &self.labels
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Bicoloring, Provenance)> {
        self.colorings.iter().zip(self.labels.iter().copied())
    }

    pub fn count_label(&self, label: Provenance) -> usize {
        self.labels.iter().filter(|&&l| l == label).count()
    }

    /// Keeps the members whose index satisfies `keep`.
    pub fn retain_indices(&mut self, mut keep: impl FnMut(usize, &Bicoloring) -> bool) {
        let mut colorings = Vec::with_capacity(self.colorings.len());
        let mut labels = Vec::with_capacity(self.labels.len());
        for (i, (x, l)) in self
            .colorings
            .drain(..)
            .zip(self.labels.drain(..))
            .enumerate()
        {
            if keep(i, &x) {
                colorings.push(x);
                labels.push(l);
            }
        }
        self.colorings = colorings;
        self.labels = labels;
    }
}
