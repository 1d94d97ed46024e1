//! Connection tables `ω_ab^c` on the frame `(E_1, …, E_5, E_6 = ∂ρ)` and the
//! table induced on the slice `{t = 1}` by the ambient Levi-Civita connection.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use crate::ambient::AmbientConnection;
use crate::data::rho_var;
use crate::exactnum::{rat, Rational, Ring, RhoFunction};
use crate::expr::eval_str;
use crate::liealg::StructureConstants;
use crate::Error;

/// A chain `f_1 ω_{a1 b1}^{c1} = f_2 ω_{a2 b2}^{c2} = … = value`. Each member
/// is `(num, den, a, b, c)` for the factor `num/den`.
pub struct Chain {
    pub members: &'static [(i64, i64, usize, usize, usize)],
    pub value: &'static str,
}

pub const PRINTED_CHAINS: &[Chain] = &[
    Chain {
        members: &[(-1, 16, 1, 1, 6), (1, 1, 1, 2, 4), (1, 1, 2, 1, 4)],
        value: "-(1 + rho)/(2*(2 + rho)^2)",
    },
    Chain {
        members: &[(-2, 1, 1, 2, 1), (-1, 1, 1, 3, 2), (1, 1, 1, 5, 4), (-2, 1, 2, 1, 1), (-1, 1, 3, 1, 2), (1, 1, 5, 1, 4)],
        value: "(4 + 3*rho)/(2*sqrt2*(2 + rho)*s)",
    },
    Chain {
        members: &[
            (1, 1, 1, 2, 3),
            (-1, 1, 1, 4, 5),
            (-8, 3, 1, 6, 4),
            (1, 1, 2, 1, 3),
            (-8, 1, 2, 6, 5),
            (-1, 1, 4, 1, 5),
            (-8, 3, 6, 1, 4),
            (-8, 1, 6, 2, 5),
        ],
        value: "sqrt2/((2 + rho)*s)",
    },
    Chain { members: &[(1, 1, 1, 3, 5), (1, 1, 3, 1, 5)], value: "(4 + 3*rho)/(4*(2 + rho)^2)" },
    Chain { members: &[(1, 1, 1, 3, 6), (1, 1, 3, 1, 6)], value: "(8 + 8*rho + 3*rho^2)/(2*(2 + rho)^2)" },
    Chain {
        members: &[
            (1, 1, 1, 6, 1),
            (1, 1, 2, 2, 5),
            (-2, 1, 2, 6, 2),
            (-2, 1, 3, 6, 3),
            (-2, 1, 4, 6, 4),
            (-2, 1, 5, 6, 5),
            (1, 1, 6, 1, 1),
            (-2, 1, 6, 2, 2),
            (-2, 1, 6, 3, 3),
            (-2, 1, 6, 4, 4),
            (-2, 1, 6, 5, 5),
        ],
        value: "-1/(2*(2 + rho))",
    },
    Chain {
        members: &[(1, 1, 2, 2, 2), (2, 1, 2, 4, 4), (-1, 1, 2, 5, 5), (2, 1, 4, 2, 4), (-1, 1, 5, 2, 5)],
        value: "1/(sqrt2*s)",
    },
    Chain {
        members: &[
            (-1, 1, 2, 2, 6),
            (2, 1, 2, 4, 1),
            (1, 1, 3, 4, 2),
            (-1, 1, 3, 5, 3),
            (-2, 1, 4, 2, 1),
            (1, 1, 5, 2, 2),
            (1, 1, 5, 3, 3),
            (-1, 1, 5, 4, 4),
            (-1, 1, 5, 5, 5),
        ],
        value: "1",
    },
    Chain { members: &[(1, 1, 2, 3, 1), (1, 1, 3, 2, 1)], value: "-rho*(4 + 3*rho)/(32*sqrt2*(2 + rho)*s)" },
    Chain {
        members: &[(1, 1, 2, 3, 3), (1, 1, 3, 2, 2), (-8, 5, 3, 6, 4), (-8, 5, 6, 3, 4)],
        value: "rho/(4*sqrt2*(2 + rho)*s)",
    },
    Chain { members: &[(1, 1, 2, 3, 4), (1, 1, 3, 2, 4)], value: "-rho*(1 + rho)/(16*(2 + rho)^2)" },
    Chain {
        members: &[(1, 1, 2, 5, 6), (1, 1, 3, 4, 6), (1, 1, 4, 3, 6), (1, 1, 5, 3, 6), (1, 1, 5, 2, 6)],
        value: "-(4 + rho)/(sqrt2*s)",
    },
    Chain {
        members: &[(1, 1, 3, 3, 2), (-2, 1, 3, 5, 4), (-2, 1, 5, 3, 4)],
        value: "-rho^2/(8*sqrt2*(2 + rho)*s)",
    },
    Chain { members: &[(-2, 1, 3, 3, 5), (1, 1, 3, 3, 6)], value: "-rho^2/(8*(2 + rho)^2)" },
    Chain { members: &[(1, 1, 3, 4, 5), (1, 1, 4, 3, 5)], value: "-(8 + 5*rho)/(4*sqrt2*(2 + rho)*s)" },
    Chain { members: &[(1, 1, 3, 6, 1), (1, 1, 6, 3, 1)], value: "-3*rho/(32*(2 + rho))" },
];

/// Sparse table of nonzero `ω_ab^c`, indices 1..=6.
#[derive(Clone, PartialEq, Debug, Default)]
pub struct ConnectionTable {
    entries: BTreeMap<(usize, usize, usize), RhoFunction>,
}

impl ConnectionTable {
    pub fn new() -> Self {
        Self::default()
    }

    /// Stores `v`, dropping zeros.
    pub fn insert(&mut self, a: usize, b: usize, c: usize, v: RhoFunction) {
        assert!((1..=6).contains(&a) && (1..=6).contains(&b) && (1..=6).contains(&c));
        if v.is_zero() {
            self.entries.remove(&(a, b, c));
        } else {
            self.entries.insert((a, b, c), v);
        }
    }

    pub fn get(&self, a: usize, b: usize, c: usize) -> RhoFunction {
        self.entries.get(&(a, b, c)).cloned().unwrap_or_else(RhoFunction::zero)
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn entries(&self) -> impl Iterator<Item = (&(usize, usize, usize), &RhoFunction)> {
        self.entries.iter()
    }
}

/// Resolves one chain member: `ω = value / factor`.
pub fn chain_member_value(chain: &Chain, member: usize) -> Result<RhoFunction, Error> {
    let (num, den, ..) = chain.members[member];
    let value = eval_str(chain.value, &rho_var)?;
    Ok(value.scale(&rat(den, num)))
}

pub fn builtin_table() -> ConnectionTable {
    let mut t = ConnectionTable::new();
    for chain in PRINTED_CHAINS {
        for (i, &(_, _, a, b, c)) in chain.members.iter().enumerate() {
            t.insert(a, b, c, chain_member_value(chain, i).expect("built-in expression"));
        }
    }
    t
}

/// `∇̃_{E_a} E_b` at `t = 1` for `a, b ∈ {E_1, …, E_n, ∂ρ}`, with the `∂t`
/// component dropped. Ambient frame indices line up with table indices.
pub fn project_ambient_connection(conn: &AmbientConnection<RhoFunction>) -> ConnectionTable {
    let last = conn.dim() - 1;
    let mut t = ConnectionTable::new();
    for a in 1..=last {
        for b in 1..=last {
            for c in 1..=last {
                t.insert(a, b, c, conn.get(a, b, c).at_t1());
            }
        }
    }
    t
}

/// Entries of the projected block that are not a single power of `t`.
pub fn projection_inhomogeneities(conn: &AmbientConnection<RhoFunction>) -> Vec<(usize, usize, usize)> {
    let last = conn.dim() - 1;
    let mut bad = Vec::new();
    for a in 1..=last {
        for b in 1..=last {
            for c in 1..=last {
                let g = conn.get(a, b, c);
                if !g.is_zero() && g.homogeneous_degree().is_none() {
                    bad.push((a, b, c));
                }
            }
        }
    }
    bad
}

/// `ω_ab^c - ω_ba^c - C_ab^c` over the frame, with `E_6` commuting with
/// everything. Returns the offending triples.
pub fn torsion_defects(t: &ConnectionTable, c: &StructureConstants) -> Vec<(usize, usize, usize)> {
    let n = c.dim();
    let mut bad = Vec::new();
    for a in 1..=6 {
        for b in (a + 1)..=6 {
            for k in 1..=6 {
                let bracket = if a <= n && b <= n && k <= n { c.get(a - 1, b - 1, k - 1).clone() } else { Rational::zero() };
                let d = t.get(a, b, k) - t.get(b, a, k) - RhoFunction::rational(bracket);
                if !d.is_zero() {
                    bad.push((a, b, k));
                }
            }
        }
    }
    bad
}

#[derive(Clone, PartialEq, Debug)]
pub struct TableDiff {
    pub key: (usize, usize, usize),
    pub left: RhoFunction,
    pub right: RhoFunction,
}

/// Every triple at which the tables disagree, in key order.
pub fn compare_tables(left: &ConnectionTable, right: &ConnectionTable) -> Vec<TableDiff> {
    let mut keys: Vec<_> = left.entries.keys().chain(right.entries.keys()).copied().collect();
    keys.sort_unstable();
    keys.dedup();
    keys.into_iter()
        .filter_map(|(a, b, c)| {
            let (l, r) = (left.get(a, b, c), right.get(a, b, c));
            (l != r).then_some(TableDiff { key: (a, b, c), left: l, right: r })
        })
        .collect()
}
