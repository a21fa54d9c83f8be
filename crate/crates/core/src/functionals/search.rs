//! Bounded enumeration of Rado functionals.
//!
//! A structure (direction, ordered pinned blocks `J_0..J_m`, unordered tail) is
//! checked once; its homogeneous part does not depend on the increments. For
//! `m ≥ 1` the increments form the family `d_i = s·(L_i − L_m)`.

use num_bigint::BigInt;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::{
    assemble_certificate, build_functional_system, check_structure_rows, structure_rows, Direction,
    FunctionalCertificate, RadoFunctional, StructureCheck,
};
use crate::linear_pr::columns_condition;
use crate::polyalg::{is_homogeneous, MultiIndex, Polynomial, Rational};
use crate::serde_util;

/// Search limits.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SearchBounds {
    pub s_max: u64,
    pub d_max: u64,
    pub max_support: usize,
    pub max_candidates: usize,
}

impl Default for SearchBounds {
    fn default() -> Self {
        SearchBounds {
            s_max: 6,
            d_max: 24,
            max_support: 8,
            max_candidates: 200_000,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SearchError {
    #[error("support has {size} monomials; the search is limited to {max}")]
    SupportTooLarge { size: usize, max: usize },
    #[error("zero polynomial has no functionals")]
    ZeroPolynomial,
}

/// Verified structure; concrete functionals are its members for integer `s`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FunctionalFamily {
    pub direction: Direction,
    pub order: usize,
    pub blocks: Vec<Vec<MultiIndex>>,
    /// Base degrees `L_0, …, L_l`.
    pub degrees: Vec<u64>,
    /// Sign of admissible `s` (0 when `m = 0`).
    pub sign: i8,
    pub partition: Vec<Vec<usize>>,
    #[serde(with = "serde_util::rat_vec")]
    pub q: Vec<Rational>,
}

impl FunctionalFamily {
    /// Increment gaps `|L_i − L_m|` for `i < m`.
    pub fn gaps(&self) -> Vec<u64> {
        let lm = self.degrees[self.order];
        self.degrees[..self.order]
            .iter()
            .map(|&l| l.abs_diff(lm))
            .collect()
    }

    /// Member with constant solution `s`; `None` if `s` has the wrong sign.
    pub fn member(&self, s: i64) -> Option<RadoFunctional> {
        if self.order == 0 {
            return Some(RadoFunctional::new(
                self.direction,
                self.blocks.clone(),
                0,
                Vec::new(),
            ));
        }
        if s == 0 || s.signum() != self.sign as i64 {
            return None;
        }
        let inc = self
            .gaps()
            .into_iter()
            .map(|g| BigInt::from(g) * s.abs())
            .collect();
        Some(RadoFunctional::new(
            self.direction,
            self.blocks.clone(),
            self.order,
            inc,
        ))
    }
}

/// Results of [`search_functionals`].
#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
pub struct SearchOutcome {
    pub functionals: Vec<FunctionalCertificate>,
    pub families: Vec<FunctionalFamily>,
    /// Structures whose positivity search hit the elimination cap.
    pub undecided: usize,
    /// The candidate cap was reached.
    pub truncated: bool,
    /// Some family had no member within `s_max`/`d_max`.
    pub out_of_bounds: usize,
}

impl SearchOutcome {
    /// Every structure was decided.
    pub fn exhaustive(&self) -> bool {
        self.undecided == 0 && !self.truncated
    }

    pub fn complete_families(&self) -> impl Iterator<Item = &FunctionalFamily> {
        self.families
            .iter()
            .filter(|f| f.order >= 1 && f.order + 1 == f.blocks.len())
    }
}

struct Masks {
    elems: Vec<MultiIndex>,
    ok: Vec<bool>,
    homog: Vec<bool>,
    base_degree: Vec<u64>,
}

impl Masks {
    fn new(elems: Vec<MultiIndex>) -> Self {
        let k = elems.len();
        let size = 1usize << k;
        let mut ok = vec![false; size];
        let mut homog = vec![false; size];
        let mut base_degree = vec![0; size];
        for mask in 1..size {
            let block = Self::block_of(&elems, mask as u32);
            homog[mask] = is_homogeneous(&block);
            base_degree[mask] = block[0].degree();
            ok[mask] = block.len() == 1
                || super::difference_matrix(&block, 0)
                    .map(|m| columns_condition(&m).is_some())
                    .unwrap_or(false);
        }
        Masks {
            elems,
            ok,
            homog,
            base_degree,
        }
    }

    fn block_of(elems: &[MultiIndex], mask: u32) -> Vec<MultiIndex> {
        super::canonical_block(
            (0..elems.len())
                .filter(|i| mask >> i & 1 == 1)
                .map(|i| elems[i].clone())
                .collect(),
        )
    }

    fn block(&self, mask: u32) -> Vec<MultiIndex> {
        Self::block_of(&self.elems, mask)
    }

    fn usable(&self, mask: u32, need_homog: bool) -> bool {
        self.ok[mask as usize] && (!need_homog || self.homog[mask as usize])
    }
}

/// Nonempty submasks of `rest` in increasing order.
fn submasks(rest: u32) -> impl Iterator<Item = u32> {
    let mut out = Vec::new();
    let mut s = rest;
    while s != 0 {
        out.push(s);
        s = (s - 1) & rest;
    }
    out.into_iter().rev()
}

struct Enumerator<'a> {
    masks: &'a Masks,
    cap: usize,
    out: Vec<(usize, Vec<u32>)>,
    truncated: bool,
}

impl Enumerator<'_> {
    fn push(&mut self, m: usize, blocks: &[u32]) {
        if self.out.len() >= self.cap {
            self.truncated = true;
        } else {
            self.out.push((m, blocks.to_vec()));
        }
    }

    fn tail(&mut self, m: usize, rest: u32, blocks: &mut Vec<u32>) {
        if self.truncated {
            return;
        }
        if rest == 0 {
            self.push(m, blocks);
            return;
        }
        let low = rest & rest.wrapping_neg();
        let others = rest & !low;
        for sub in submasks(others).chain(std::iter::once(0)) {
            let b = sub | low;
            if self.masks.usable(b, m >= 1) {
                blocks.push(b);
                self.tail(m, rest & !b, blocks);
                blocks.pop();
            }
        }
    }

    fn pinned(&mut self, m: usize, rest: u32, blocks: &mut Vec<u32>) {
        if self.truncated {
            return;
        }
        if blocks.len() == m + 1 {
            self.tail(m, rest, blocks);
            return;
        }
        for b in submasks(rest) {
            if !self.masks.usable(b, m >= 1) {
                continue;
            }
            if !blocks.is_empty() {
                let deg = |x: u32| self.masks.base_degree[x as usize];
                let prev = deg(blocks[blocks.len() - 1]);
                let cur = deg(b);
                if cur == prev {
                    continue;
                }
                if blocks.len() >= 2 {
                    let before = deg(blocks[blocks.len() - 2]);
                    if (before > prev) != (prev > cur) {
                        continue;
                    }
                }
            }
            blocks.push(b);
            self.pinned(m, rest & !b, blocks);
            blocks.pop();
        }
    }
}

/// Enumerates verified functionals of `P` up to the given bounds.
pub fn search_functionals(
    p: &Polynomial,
    vars: &[String],
    directions: &[Direction],
    bounds: &SearchBounds,
) -> Result<SearchOutcome, SearchError> {
    let supp = p.support();
    if supp.is_empty() {
        return Err(SearchError::ZeroPolynomial);
    }
    if supp.len() > bounds.max_support.min(20) {
        return Err(SearchError::SupportTooLarge {
            size: supp.len(),
            max: bounds.max_support,
        });
    }
    let k = supp.len();
    let masks = Masks::new(supp);
    let full = ((1u64 << k) - 1) as u32;
    let mut en = Enumerator {
        masks: &masks,
        cap: bounds.max_candidates,
        out: Vec::new(),
        truncated: false,
    };
    let max_m = if p.is_homogeneous() { 0 } else { k - 1 };
    for m in 0..=max_m {
        en.pinned(m, full, &mut Vec::new());
    }
    let truncated = en.truncated;
    let candidates = en.out;

    let n = p.nvars();
    let checked: Vec<(Direction, usize, Vec<Vec<MultiIndex>>, StructureCheck)> = candidates
        .par_iter()
        .flat_map_iter(|(m, bm)| {
            let blocks: Vec<Vec<MultiIndex>> = bm.iter().map(|&b| masks.block(b)).collect();
            directions
                .iter()
                .map(|&dir| {
                    let (rows, _, ineq) = structure_rows(dir, &blocks, *m);
                    (
                        dir,
                        *m,
                        blocks.clone(),
                        check_structure_rows(n, &rows, &ineq),
                    )
                })
                .collect::<Vec<_>>()
        })
        .collect();

    let mut out = SearchOutcome {
        truncated,
        ..SearchOutcome::default()
    };
    for (direction, order, blocks, res) in checked {
        match res {
            StructureCheck::Verified { partition, q } => {
                let degrees: Vec<u64> = blocks.iter().map(|b| b[0].degree()).collect();
                let sign = if order == 0 {
                    0
                } else {
                    let down = degrees[0] > degrees[order];
                    match (direction, down) {
                        (Direction::Upper, true) | (Direction::Lower, false) => 1,
                        _ => -1,
                    }
                };
                out.families.push(FunctionalFamily {
                    direction,
                    order,
                    blocks,
                    degrees,
                    sign,
                    partition,
                    q,
                });
            }
            StructureCheck::Rejected => {}
            StructureCheck::Undecided => out.undecided += 1,
        }
    }
    out.families
        .sort_by(|a, b| (a.direction, a.order, &a.blocks).cmp(&(b.direction, b.order, &b.blocks)));

    for fam in &out.families {
        let mut emitted = 0;
        if fam.order == 0 {
            let f = fam.member(0).expect("order 0");
            let mats = build_functional_system(&f, p).expect("enumerated structure is well formed");
            out.functionals.push(assemble_certificate(
                &f,
                p,
                vars,
                &mats,
                None,
                fam.partition.clone(),
                fam.q.clone(),
            ));
            continue;
        }
        let top_gap = fam.gaps()[0];
        for s_abs in 1..=bounds.s_max as i64 {
            if top_gap * s_abs as u64 > bounds.d_max {
                break;
            }
            let s = s_abs * fam.sign as i64;
            let f = fam.member(s).expect("sign matches");
            let mats = build_functional_system(&f, p).expect("enumerated structure is well formed");
            out.functionals.push(assemble_certificate(
                &f,
                p,
                vars,
                &mats,
                Some(BigInt::from(s)),
                fam.partition.clone(),
                fam.q.clone(),
            ));
            emitted += 1;
        }
        if emitted == 0 {
            out.out_of_bounds += 1;
        }
    }
    out.functionals
        .sort_by(|a, b| a.functional.cmp(&b.functional));
    Ok(out)
}
