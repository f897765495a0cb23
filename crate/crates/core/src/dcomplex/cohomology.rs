//! Direct cohomology computations by subspace arithmetic.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::exactla::Subspace;

use super::BigradedComplex;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Flavor {
    /// `H_{d1}`.
    Row,
    /// `H_{d2}`; Dolbeault cohomology for the deformed complex.
    Column,
    BottChern,
    Aeppli,
    DeRham,
}

impl Flavor {
    pub const BIGRADED: [Flavor; 4] = [Flavor::Row, Flavor::Column, Flavor::BottChern, Flavor::Aeppli];

    pub fn name(self) -> &'static str {
        match self {
            Flavor::Row => "row",
            Flavor::Column => "column",
            Flavor::BottChern => "bott_chern",
            Flavor::Aeppli => "aeppli",
            Flavor::DeRham => "de_rham",
        }
    }
}

impl fmt::Display for Flavor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Flavor {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "row" => Ok(Flavor::Row),
            "column" => Ok(Flavor::Column),
            "bott_chern" | "bc" => Ok(Flavor::BottChern),
            "aeppli" => Ok(Flavor::Aeppli),
            "de_rham" => Ok(Flavor::DeRham),
            other => Err(format!("unknown cohomology flavor {other:?}")),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(untagged)]
pub enum TableKey {
    Bidegree(i64, i64),
    Degree(i64),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CohomologyTable {
    pub flavor: Flavor,
    pub dims: BTreeMap<TableKey, usize>,
}

impl CohomologyTable {
    pub fn get(&self, key: TableKey) -> usize {
        self.dims.get(&key).copied().unwrap_or(0)
    }
}

impl BigradedComplex {
    /// `dim ker(d2 at (p,q)) − rank(d2 at (p,q−1))`.
    pub fn column_cohomology(&self, p: i64, q: i64) -> usize {
        let ker = self.d2((p, q)).kernel();
        let im = self.d2((p, q - 1)).image();
        ker.quotient_dim(&im).expect("d2 ∘ d2 = 0 in a validated complex")
    }

    /// `dim ker(d1 at (p,q)) − rank(d1 at (p−1,q))`.
    pub fn row_cohomology(&self, p: i64, q: i64) -> usize {
        let ker = self.d1((p, q)).kernel();
        let im = self.d1((p - 1, q)).image();
        ker.quotient_dim(&im).expect("d1 ∘ d1 = 0 in a validated complex")
    }

    /// `(ker d1 ∩ ker d2) / im(d2 d1)` at `(p,q)`.
    pub fn bott_chern(&self, p: i64, q: i64) -> usize {
        let closed = self
            .d1((p, q))
            .kernel()
            .intersect(&self.d2((p, q)).kernel())
            .expect("same component");
        let exact = self.d2d1((p - 1, q - 1)).image();
        closed.quotient_dim(&exact).expect("validated complex")
    }

    /// `ker(d2 d1) / (im d1 + im d2)` at `(p,q)`.
    pub fn aeppli(&self, p: i64, q: i64) -> usize {
        let closed = self.d2d1((p, q)).kernel();
        let exact = self
            .d1((p - 1, q))
            .image()
            .sum(&self.d2((p, q - 1)).image())
            .expect("same component");
        closed.quotient_dim(&exact).expect("validated complex")
    }

    /// Cohomology of the total complex `(⊕_{p+q=k} A^{p,q}, d1 + d2)`.
    pub fn de_rham(&self, k: i64) -> usize {
        let dim = self.total_degree(k).dim;
        if dim == 0 {
            return 0;
        }
        let out = self.total_differential(k);
        let inc = self.total_differential(k - 1);
        let ker = out.kernel();
        let im: Subspace = inc.image();
        ker.quotient_dim(&im).expect("d ∘ d = 0 in a validated complex")
    }

    pub fn cohomology(&self, flavor: Flavor, p: i64, q: i64) -> usize {
        match flavor {
            Flavor::Row => self.row_cohomology(p, q),
            Flavor::Column => self.column_cohomology(p, q),
            Flavor::BottChern => self.bott_chern(p, q),
            Flavor::Aeppli => self.aeppli(p, q),
            Flavor::DeRham => self.de_rham(p + q),
        }
    }

    /// All nonzero entries of one flavor. Bigraded flavors are keyed by the
    /// support; de Rham by total degree.
    pub fn cohomology_table(&self, flavor: Flavor) -> CohomologyTable {
        let mut dims = BTreeMap::new();
        match flavor {
            Flavor::DeRham => {
                if let Some((lo, hi)) = self.degree_range() {
                    for k in lo..=hi {
                        dims.insert(TableKey::Degree(k), self.de_rham(k));
                    }
                }
            }
            _ => {
                for (p, q) in self.support() {
                    dims.insert(TableKey::Bidegree(p, q), self.cohomology(flavor, p, q));
                }
            }
        }
        CohomologyTable { flavor, dims }
    }
}
