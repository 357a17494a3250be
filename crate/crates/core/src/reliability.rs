//! Fault-structure guarantees of hypercubes under bounded vertex failures,
//! and the resulting extra-connectivity closed forms.
//!
//! When fewer than b_v(h; Q_n) vertices fail, the survivor graph keeps one
//! large component and the other components hold at most f(h) vertices in
//! total. The (h-1)-extra connectivity follows from the same machinery on
//! five guarded (n, h) ranges; outside those ranges nothing is claimed and
//! callers get a range error instead of an extrapolation.

use std::fmt;

use crate::error::{Error, Result};
use crate::hypercube::{components, ComponentProfile, FaultSet};
use crate::isoperimetry::boundary_cascade;

/// Upper bound on the total order of the small components of Q_n - S when
/// |S| < b_v(h; Q_n), for 1 <= h <= 3n - 6.
pub fn f_of_h(n: u32, h: u64) -> Result<u64> {
    let n = n as u64;
    if n < 3 || h < 1 || h > 3 * n - 6 {
        return Err(Error::Range(format!(
            "f(h) is defined for 1 <= h <= 3n - 6, got h = {h} at n = {n}"
        )));
    }
    let f = if h <= n - 2 {
        h - 1
    } else if h == n - 1 || h == n {
        n + 1
    } else if h == n + 1 {
        n
    } else if (n + 2..=2 * n - 3).contains(&h) {
        h - 1
    } else if h == 2 * n - 2 || h == 2 * n - 1 || h == 2 * n + 1 {
        2 * n
    } else if h == 2 * n {
        2 * n - 4
    } else {
        debug_assert!(h >= 2 * n + 2);
        h - 1
    };
    Ok(f)
}

/// The structure guarantee is only proven for n large enough per h-range:
/// n >= 5 up to h = n + 1, n >= 7 up to h = 2n + 1, n >= 9 beyond.
pub(crate) fn structure_guard(n: u32, h: u64) -> Result<()> {
    let n64 = n as u64;
    if n < 5 || h < 1 || h > 3 * n64 - 6 {
        return Err(Error::Range(format!(
            "structure guarantee requires n >= 5 and 1 <= h <= 3n - 6, got n = {n}, h = {h}"
        )));
    }
    let needed = if h <= n64 + 1 {
        5
    } else if h <= 2 * n64 + 1 {
        7
    } else {
        9
    };
    if n < needed {
        return Err(Error::Range(format!(
            "structure guarantee for h = {h} requires n >= {needed}, got n = {n}"
        )));
    }
    Ok(())
}

/// Whether the structure guarantee is proven for this (n, h) pair.
pub fn structure_guard_holds(n: u32, h: u64) -> bool {
    structure_guard(n, h).is_ok()
}

/// Pass/fail record of the small-component bound for one (n, h, S).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StructureVerdict {
    pub n: u32,
    pub h: u64,
    pub fault_size: u64,
    /// b_v(h; Q_n); the guarantee only speaks below this fault count.
    pub threshold: u64,
    pub profile: ComponentProfile,
    /// f(h).
    pub bound: u64,
    pub pass: bool,
}

/// Checks that Q_n - S keeps a large component with at most f(h) vertices
/// outside it. All components except one maximum-order component (ties to
/// the smallest label) count as small.
pub fn structure_check(h: u64, faults: &FaultSet) -> Result<StructureVerdict> {
    let n = faults.dim().n();
    structure_guard(n, h)?;
    let threshold = boundary_cascade(n, h)?.value;
    if faults.len() >= threshold {
        return Err(Error::Precondition(format!(
            "structure guarantee needs |S| < b_v({h}; Q_{n}) = {threshold}, got |S| = {}",
            faults.len()
        )));
    }
    let bound = f_of_h(n, h)?;
    let profile = components(faults);
    let pass = !profile.sizes.is_empty() && profile.small_total <= bound;
    Ok(StructureVerdict {
        n,
        h,
        fault_size: faults.len(),
        threshold,
        profile,
        bound,
        pass,
    })
}

/// The five proven (n, h) ranges of the extra-connectivity closed form.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FormulaRow {
    Row1,
    Row2,
    Row3,
    Row4,
    Row5,
}

impl FormulaRow {
    /// The licensing range, written with h = (h-1) + 1.
    pub fn guard(self) -> &'static str {
        match self {
            FormulaRow::Row1 => "1<=h<=n-3 and n>=5",
            FormulaRow::Row2 => "n-2<=h<=n+1 and n>=5",
            FormulaRow::Row3 => "n+2<=h<=2n-4 and n>=7",
            FormulaRow::Row4 => "2n-3<=h<=2n and n>=7",
            FormulaRow::Row5 => "2n+1<=h<=3n-6 and n>=9",
        }
    }

    /// The b_v argument whose value the row returns.
    pub fn boundary_order(self, n: u32, h: u64) -> u64 {
        match self {
            FormulaRow::Row1 | FormulaRow::Row3 | FormulaRow::Row5 => h,
            FormulaRow::Row2 => n as u64 - 2,
            FormulaRow::Row4 => 2 * n as u64 - 3,
        }
    }

    /// The order of the witness set whose boundary realizes the cut. On the
    /// plateau rows this is the top of the plateau (n + 1 resp. 2n), so the
    /// cut leaves a component of at least h vertices for every licensed h.
    pub fn witness_order(self, n: u32, h: u64) -> u64 {
        match self {
            FormulaRow::Row1 | FormulaRow::Row3 | FormulaRow::Row5 => h,
            FormulaRow::Row2 => n as u64 + 1,
            FormulaRow::Row4 => 2 * n as u64,
        }
    }
}

impl fmt::Display for FormulaRow {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let k = match self {
            FormulaRow::Row1 => 1,
            FormulaRow::Row2 => 2,
            FormulaRow::Row3 => 3,
            FormulaRow::Row4 => 4,
            FormulaRow::Row5 => 5,
        };
        write!(f, "row{k}")
    }
}

/// One entry of the extra-connectivity table.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExtraConnEntry {
    pub n: u32,
    pub h_minus_1: u64,
    pub value: u64,
    pub formula_row: FormulaRow,
}

impl ExtraConnEntry {
    pub fn guard(&self) -> &'static str {
        self.formula_row.guard()
    }

    pub fn witness_order(&self) -> u64 {
        self.formula_row.witness_order(self.n, self.h_minus_1 + 1)
    }
}

/// The (h-1)-extra connectivity of Q_n on the proven ranges.
pub fn extra_connectivity(n: u32, h_minus_1: u64) -> Result<ExtraConnEntry> {
    let h = h_minus_1.checked_add(1).ok_or_else(|| {
        Error::Range("extra-connectivity index overflows".to_string())
    })?;
    let n64 = n as u64;
    let row = if n >= 5 && h <= n64 - 3 {
        FormulaRow::Row1
    } else if n >= 5 && h >= n64 - 2 && h <= n64 + 1 {
        FormulaRow::Row2
    } else if n >= 7 && h >= n64 + 2 && h <= 2 * n64 - 4 {
        FormulaRow::Row3
    } else if n >= 7 && h >= 2 * n64 - 3 && h <= 2 * n64 {
        FormulaRow::Row4
    } else if n >= 9 && h > 2 * n64 && h <= 3 * n64 - 6 {
        FormulaRow::Row5
    } else {
        return Err(Error::Range(format!(
            "no proven extra-connectivity formula for h - 1 = {h_minus_1} at n = {n}"
        )));
    };
    let value = boundary_cascade(n, row.boundary_order(n, h))?.value;
    Ok(ExtraConnEntry {
        n,
        h_minus_1,
        value,
        formula_row: row,
    })
}

/// An h left uncovered by every proven range.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GapEntry {
    pub h_minus_1: u64,
    pub reason: String,
}

/// The full licensed table for one dimension plus the unlicensed gaps.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExtraConnTable {
    pub n: u32,
    pub entries: Vec<ExtraConnEntry>,
    pub gaps: Vec<GapEntry>,
}

/// Tabulates [`extra_connectivity`] over h = 1..=3n-6, ascending, reporting
/// unlicensed rows as gaps instead of interpolating them.
pub fn extra_conn_table(n: u32) -> Result<ExtraConnTable> {
    if n < 5 {
        return Err(Error::Range(format!(
            "extra-connectivity table requires n >= 5, got {n}"
        )));
    }
    let mut entries = Vec::new();
    let mut gaps = Vec::new();
    for h in 1..=3 * n as u64 - 6 {
        match extra_connectivity(n, h - 1) {
            Ok(entry) => entries.push(entry),
            Err(Error::Range(_)) => gaps.push(GapEntry {
                h_minus_1: h - 1,
                reason: format!("unproven for n={n}"),
            }),
            Err(other) => return Err(other),
        }
    }
    Ok(ExtraConnTable { n, entries, gaps })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hypercube::{vertex_boundary, CubeDim, VertexId};
    use crate::isoperimetry::witness_set;

    fn bv(n: u32, m: u64) -> u64 {
        boundary_cascade(n, m).unwrap().value
    }

    #[test]
    fn f_of_h_examples() {
        assert_eq!(f_of_h(9, 5).unwrap(), 4);
        assert_eq!(f_of_h(9, 9).unwrap(), 10);
        assert_eq!(f_of_h(9, 18).unwrap(), 14);
        assert!(matches!(f_of_h(9, 0), Err(Error::Range(_))));
        assert!(matches!(f_of_h(9, 22), Err(Error::Range(_))));
    }

    #[test]
    fn f_of_h_ranges_tile_without_overlap() {
        for n in 5u64..=20 {
            for h in 1..=3 * n - 6 {
                let matches = [
                    h <= n - 2,
                    h == n - 1 || h == n,
                    h == n + 1,
                    (n + 2..=2 * n - 3).contains(&h),
                    h == 2 * n - 2 || h == 2 * n - 1 || h == 2 * n + 1,
                    h == 2 * n,
                    h >= 2 * n + 2,
                ]
                .iter()
                .filter(|&&b| b)
                .count();
                assert_eq!(matches, 1, "n={n} h={h}");
                assert!(f_of_h(n as u32, h).is_ok());
            }
        }
    }

    #[test]
    fn structure_check_without_faults() {
        let dim = CubeDim::new(5).unwrap();
        let verdict = structure_check(1, &FaultSet::new(dim)).unwrap();
        assert!(verdict.pass);
        assert_eq!(verdict.profile.sizes, vec![32]);
        assert_eq!(verdict.threshold, 5);
        assert_eq!(verdict.bound, 0);
    }

    #[test]
    fn structure_check_seven_faults_in_q5() {
        let dim = CubeDim::new(5).unwrap();
        assert_eq!(bv(5, 2), 8);
        // A handful of fixed 7-vertex fault sets, including a full vertex
        // neighborhood plus padding.
        let samples: [&[u32]; 3] = [
            &[0, 1, 2, 3, 4, 5, 6],
            &[1, 2, 4, 8, 16, 31, 7],
            &[3, 5, 9, 17, 6, 10, 30],
        ];
        for labels in samples {
            let faults =
                FaultSet::from_labels(dim, labels.iter().map(|&l| VertexId(l))).unwrap();
            let verdict = structure_check(2, &faults).unwrap();
            assert!(verdict.pass, "faults {labels:?}");
            assert!(verdict.profile.small_total <= 1);
        }
    }

    #[test]
    fn structure_check_tight_witness_boundary() {
        let dim = CubeDim::new(7).unwrap();
        let witness = witness_set(dim, 8).unwrap();
        let cut = vertex_boundary(&witness.vertices).unwrap();
        assert_eq!(cut.len(), bv(7, 8));
        let verdict = structure_check(9, &cut).unwrap();
        assert_eq!(verdict.threshold, 25);
        assert_eq!(verdict.bound, 8);
        assert_eq!(verdict.profile.small_total, 8);
        assert!(verdict.pass);
    }

    #[test]
    fn structure_check_guards_and_preconditions() {
        let dim5 = CubeDim::new(5).unwrap();
        // h = 7 needs n >= 7.
        assert!(matches!(
            structure_check(7, &FaultSet::new(dim5)),
            Err(Error::Range(_))
        ));
        let dim8 = CubeDim::new(8).unwrap();
        // h = 18 = 2n + 2 needs n >= 9.
        assert!(matches!(
            structure_check(18, &FaultSet::new(dim8)),
            Err(Error::Range(_))
        ));
        let dim4 = CubeDim::new(4).unwrap();
        assert!(matches!(
            structure_check(1, &FaultSet::new(dim4)),
            Err(Error::Range(_))
        ));
        // Fault count at the threshold is out of contract.
        let faults =
            FaultSet::from_labels(dim5, (0..8).map(VertexId)).unwrap();
        assert!(matches!(
            structure_check(2, &faults),
            Err(Error::Precondition(_))
        ));
    }

    #[test]
    fn extra_connectivity_examples() {
        assert_eq!(extra_connectivity(5, 0).unwrap().value, 5);
        let e = extra_connectivity(5, 3).unwrap();
        assert_eq!(e.value, 10);
        assert_eq!(e.formula_row, FormulaRow::Row2);

        let e = extra_connectivity(7, 12).unwrap();
        assert_eq!(e.value, 30);
        assert_eq!(e.formula_row, FormulaRow::Row4);
        assert_eq!(e.value, bv(7, 11));

        // Row 5 returns b_v(h) itself.
        let e = extra_connectivity(9, 19).unwrap();
        assert_eq!(e.formula_row, FormulaRow::Row5);
        assert_eq!(e.value, bv(9, 20));
        assert_eq!(e.value, 65);
    }

    #[test]
    fn extra_connectivity_refuses_unlicensed_cells() {
        // h = 2n + 1 = 15 at n = 7 wants row 5, which needs n >= 9.
        assert!(matches!(extra_connectivity(7, 14), Err(Error::Range(_))));
        assert!(matches!(extra_connectivity(4, 0), Err(Error::Range(_))));
        assert!(matches!(extra_connectivity(9, 21), Err(Error::Range(_))));
    }

    #[test]
    fn super_connectivity_consistency() {
        for n in 5..=12u32 {
            let e = extra_connectivity(n, 1).unwrap();
            assert_eq!(e.value, 2 * n as u64 - 2);
            assert_eq!(e.value, bv(n, 2));
        }
    }

    #[test]
    fn table_for_q5() {
        let table = extra_conn_table(5).unwrap();
        let values: Vec<u64> = table.entries.iter().map(|e| e.value).collect();
        assert_eq!(values, vec![5, 8, 10, 10, 10, 10]);
        let gap_hs: Vec<u64> = table.gaps.iter().map(|g| g.h_minus_1).collect();
        assert_eq!(gap_hs, vec![6, 7, 8]);
    }

    #[test]
    fn table_for_q7_has_row4_plateau_and_final_gap() {
        let table = extra_conn_table(7).unwrap();
        assert_eq!(table.entries.len(), 14);
        for e in &table.entries[10..14] {
            assert_eq!(e.value, 30);
            assert_eq!(e.formula_row, FormulaRow::Row4);
        }
        assert_eq!(table.gaps.len(), 1);
        assert_eq!(table.gaps[0].h_minus_1, 14);
    }

    #[test]
    fn table_for_q9_is_complete_and_nondecreasing() {
        let table = extra_conn_table(9).unwrap();
        assert_eq!(table.entries.len(), 21);
        assert!(table.gaps.is_empty());
        let values: Vec<u64> = table.entries.iter().map(|e| e.value).collect();
        assert!(values.windows(2).all(|w| w[0] <= w[1]), "{values:?}");
    }

    #[test]
    fn plateau_rows_return_the_plateau_value() {
        for n in 5..=12u32 {
            let n64 = n as u64;
            for h in n64 - 2..=n64 + 1 {
                let e = extra_connectivity(n, h - 1).unwrap();
                assert_eq!(e.value, bv(n, n64 - 2));
                assert_eq!(e.witness_order(), n64 + 1);
                assert_eq!(bv(n, e.witness_order()), e.value);
            }
            if n >= 7 {
                for h in 2 * n64 - 3..=2 * n64 {
                    let e = extra_connectivity(n, h - 1).unwrap();
                    assert_eq!(e.value, bv(n, 2 * n64 - 3));
                    assert_eq!(e.witness_order(), 2 * n64);
                    assert_eq!(bv(n, e.witness_order()), e.value);
                }
            }
        }
    }

    #[test]
    fn table_requires_minimum_dimension() {
        assert!(matches!(extra_conn_table(4), Err(Error::Range(_))));
    }

    /// Every table entry is realized by an actual cut: the boundary of the
    /// witness of the row's designated order has the entry's size, and
    /// removing it leaves exactly the witness component plus one large
    /// component, both of order >= h.
    #[test]
    fn witness_boundaries_realize_every_licensed_entry() {
        for n in 5..=10u32 {
            let dim = CubeDim::new(n).unwrap();
            for entry in extra_conn_table(n).unwrap().entries {
                let h = entry.h_minus_1 + 1;
                let order = entry.witness_order();
                let witness = witness_set(dim, order).unwrap();
                let cut = vertex_boundary(&witness.vertices).unwrap();
                assert_eq!(cut.len(), entry.value, "n={n} h={h}");
                let profile = crate::hypercube::components(&cut);
                let large = dim.vertex_count() - entry.value - order;
                assert_eq!(profile.sizes, vec![large, order], "n={n} h={h}");
                assert!(order >= h && large >= h, "n={n} h={h}");
            }
        }
    }
}
