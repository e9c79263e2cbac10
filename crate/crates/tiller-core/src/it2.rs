//! Interval type-2 extension: footprints of uncertainty built by moving a
//! type-1 triangle horizontally, interval membership grades, interval
//! firing, Karnik-Mendel type reduction and interval defuzzification.
//!
//! The FOU of size `m` is the envelope of the continuous family of copies
//! of the source triangle shifted by every `t` in `[-m, m]`: the upper
//! membership function is the pointwise max of the family (a flat-topped
//! trapezoid) and the lower membership function is the pointwise min (the
//! two extreme shifts), clamped at zero. `m = 0` degenerates to the source
//! triangle on both bounds, bit for bit.

use crate::fuzzy::{
    grid_point, triangle_grade, CrispOutput, FuzzyError, MFBank, OutputFuzzySet, RuleBase, TriangularMF,
};
use thiserror::Error;

#[derive(Debug, Error, PartialEq)]
pub enum It2Error {
    #[error("FOU size must be non-negative, got {0}")]
    NegativeShift(f64),
    #[error(transparent)]
    Fuzzy(#[from] FuzzyError),
    #[error("interval grades out of order at sample {0}")]
    GradeOrder(usize),
    #[error("interval set needs lower and upper surfaces of equal length")]
    SurfaceMismatch,
    #[error("type reduction did not converge within {0} iterations")]
    NonConvergence(usize),
}

/// An interval type-2 membership function: a source triangle plus the FOU
/// size `m` (the horizontal movement, in degrees).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct IntervalMF {
    source: TriangularMF,
    shift: f64,
}

impl IntervalMF {
    pub fn new(source: TriangularMF, shift: f64) -> Result<Self, It2Error> {
        if !(shift >= 0.0) {
            return Err(It2Error::NegativeShift(shift));
        }
        Ok(Self { source, shift })
    }

    pub fn source(&self) -> &TriangularMF {
        &self.source
    }

    pub fn shift(&self) -> f64 {
        self.shift
    }

    /// Corners (a, b, c, d) of the trapezoidal upper membership function.
    pub fn umf_corners(&self) -> (f64, f64, f64, f64) {
        (
            self.source.left_foot() - self.shift,
            self.source.apex() - self.shift,
            self.source.apex() + self.shift,
            self.source.right_foot() + self.shift,
        )
    }

    /// Apex height of the lower membership function for a symmetric source:
    /// `max(0, 1 - m / half_width)`. The LMF support shrinks to
    /// `[left_foot + m, right_foot - m]` and vanishes once `m` reaches the
    /// half-width.
    pub fn lmf_apex_height(&self) -> f64 {
        (1.0 - self.shift / self.source.half_width()).max(0.0)
    }

    pub fn upper_grade(&self, x: f64) -> f64 {
        let (a, b, c, d) = self.umf_corners();
        if x < a || x > d {
            0.0
        } else if x >= b && x <= c {
            1.0
        } else if x < b {
            (x - a) / (b - a)
        } else {
            (d - x) / (d - c)
        }
    }

    pub fn lower_grade(&self, x: f64) -> f64 {
        let left = self.source.shifted(-self.shift);
        let right = self.source.shifted(self.shift);
        let g = triangle_grade(left.left_foot(), left.apex(), left.right_foot(), x)
            .min(triangle_grade(right.left_foot(), right.apex(), right.right_foot(), x));
        g.max(0.0)
    }

    /// Interval membership grade `(lower, upper)` of `x`.
    pub fn grade(&self, x: f64) -> (f64, f64) {
        (self.lower_grade(x), self.upper_grade(x))
    }
}

/// Blur a type-1 triangle into an interval type-2 membership function by
/// horizontal movement `m`.
pub fn blur_mf(mf: &TriangularMF, m: f64) -> Result<IntervalMF, It2Error> {
    IntervalMF::new(*mf, m)
}

/// A five-term input bank with every triangle blurred by the same FOU size.
#[derive(Debug, Clone, PartialEq)]
pub struct BlurredBank {
    universe_min: f64,
    universe_max: f64,
    imfs: Vec<IntervalMF>,
}

impl BlurredBank {
    pub fn from_bank(bank: &MFBank, m: f64) -> Result<Self, It2Error> {
        let imfs = bank
            .mfs()
            .iter()
            .map(|mf| blur_mf(mf, m))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(Self {
            universe_min: bank.universe_min(),
            universe_max: bank.universe_max(),
            imfs,
        })
    }

    pub fn imfs(&self) -> &[IntervalMF] {
        &self.imfs
    }

    pub fn clamp(&self, x: f64) -> f64 {
        x.clamp(self.universe_min, self.universe_max)
    }

    /// Interval grades of a (clamped) input in all five terms.
    pub fn grades(&self, x: f64) -> [(f64, f64); 5] {
        let x = self.clamp(x);
        let mut out = [(0.0, 0.0); 5];
        for (g, imf) in out.iter_mut().zip(&self.imfs) {
            *g = imf.grade(x);
        }
        out
    }
}

/// An aggregated interval type-2 output set: one uniform grid carrying a
/// lower and an upper membership surface.
#[derive(Debug, Clone, PartialEq)]
pub struct IntervalOutputSet {
    domain_min: f64,
    domain_max: f64,
    lower: Vec<f64>,
    upper: Vec<f64>,
}

impl IntervalOutputSet {
    pub fn new(domain_min: f64, domain_max: f64, lower: Vec<f64>, upper: Vec<f64>) -> Result<Self, It2Error> {
        if lower.len() != upper.len() {
            return Err(It2Error::SurfaceMismatch);
        }
        if lower.len() < 2 {
            return Err(It2Error::Fuzzy(FuzzyError::GridTooSmall(lower.len())));
        }
        if domain_min >= domain_max {
            return Err(It2Error::Fuzzy(FuzzyError::UniverseOrder));
        }
        for (i, (&l, &u)) in lower.iter().zip(&upper).enumerate() {
            if !(0.0 <= l && l <= u && u <= 1.0) {
                return Err(It2Error::GradeOrder(i));
            }
        }
        Ok(Self {
            domain_min,
            domain_max,
            lower,
            upper,
        })
    }

    fn zeros(domain_min: f64, domain_max: f64, points: usize) -> Result<Self, It2Error> {
        if points < 2 {
            return Err(It2Error::Fuzzy(FuzzyError::GridTooSmall(points)));
        }
        if domain_min >= domain_max {
            return Err(It2Error::Fuzzy(FuzzyError::UniverseOrder));
        }
        Ok(Self {
            domain_min,
            domain_max,
            lower: vec![0.0; points],
            upper: vec![0.0; points],
        })
    }

    pub fn len(&self) -> usize {
        self.lower.len()
    }

    pub fn is_empty(&self) -> bool {
        self.lower.is_empty()
    }

    pub fn domain_min(&self) -> f64 {
        self.domain_min
    }

    pub fn domain_max(&self) -> f64 {
        self.domain_max
    }

    pub fn lower(&self) -> &[f64] {
        &self.lower
    }

    pub fn upper(&self) -> &[f64] {
        &self.upper
    }

    pub fn z_at(&self, i: usize) -> f64 {
        grid_point(self.domain_min, self.domain_max, self.lower.len(), i)
    }

    /// Collapse to a type-1 set using the lower surface only (test helper
    /// for the degenerate-interval case).
    pub fn lower_as_type1(&self) -> OutputFuzzySet {
        OutputFuzzySet::from_grades(self.domain_min, self.domain_max, self.lower.clone())
            .expect("surfaces validated at construction")
    }
}

/// The type-reduced centroid interval `[left, right]` of an interval set.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CentroidInterval {
    pub left: f64,
    pub right: f64,
}

impl CentroidInterval {
    pub fn width(&self) -> f64 {
        self.right - self.left
    }
}

/// Result of type reduction, with the vacuous-output diagnostic matching
/// [`crate::fuzzy::centroid_defuzz`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TypeReduced {
    pub interval: CentroidInterval,
    pub vacuous: bool,
}

/// Interval Mamdani inference: each rule fires over the interval
/// `[min of lower grades, min of upper grades]` of its two antecedents, the
/// (type-1) consequent term is clipped at each bound, and the two surfaces
/// aggregate by pointwise max independently.
pub fn infer_it2(
    rules: &RuleBase,
    error: f64,
    delta: f64,
    error_bank: &BlurredBank,
    delta_bank: &BlurredBank,
    output_bank: &MFBank,
    grid_points: usize,
) -> Result<IntervalOutputSet, It2Error> {
    let error_grades = error_bank.grades(error);
    let delta_grades = delta_bank.grades(delta);
    let mut set = IntervalOutputSet::zeros(output_bank.universe_min(), output_bank.universe_max(), grid_points)?;

    for (i, &(el, eu)) in error_grades.iter().enumerate() {
        if eu == 0.0 {
            continue;
        }
        for (j, &(dl, du)) in delta_grades.iter().enumerate() {
            if du == 0.0 {
                continue;
            }
            let f_lower = el.min(dl);
            let f_upper = eu.min(du);
            let consequent = &output_bank.mfs()[rules.consequent_index(i, j)];
            for k in 0..grid_points {
                let z = grid_point(output_bank.universe_min(), output_bank.universe_max(), grid_points, k);
                let g = consequent.grade(z);
                let clip_l = f_lower.min(g);
                let clip_u = f_upper.min(g);
                if clip_l > set.lower[k] {
                    set.lower[k] = clip_l;
                }
                if clip_u > set.upper[k] {
                    set.upper[k] = clip_u;
                }
            }
        }
    }
    Ok(set)
}

const KM_MAX_ITERATIONS: usize = 100;

#[derive(Clone, Copy)]
enum Extremum {
    Left,
    Right,
}

/// Karnik-Mendel type reduction: the extrema of the membership-weighted
/// mean over every grade selection `theta_i` in `[lower_i, upper_i]`.
///
/// Each extremum is located by the iterative switch-point procedure:
/// the left centroid uses upper grades left of the switch index and lower
/// grades right of it, the right centroid the reverse; iteration stops when
/// the switch index repeats, with a hard cap of 100 rounds. An all-zero
/// upper surface yields `(0, 0)` with the vacuous flag raised.
pub fn km_type_reduce(set: &IntervalOutputSet) -> Result<TypeReduced, It2Error> {
    let support: Vec<usize> = (0..set.len()).filter(|&i| set.upper[i] > 0.0).collect();
    if support.is_empty() {
        return Ok(TypeReduced {
            interval: CentroidInterval { left: 0.0, right: 0.0 },
            vacuous: true,
        });
    }
    if support.len() == 1 {
        let z = set.z_at(support[0]);
        return Ok(TypeReduced {
            interval: CentroidInterval { left: z, right: z },
            vacuous: false,
        });
    }
    let left = km_extremum(set, Extremum::Left)?;
    let right = km_extremum(set, Extremum::Right)?;
    Ok(TypeReduced {
        interval: CentroidInterval { left, right },
        vacuous: false,
    })
}

fn weighted_mean_with_switch(set: &IntervalOutputSet, switch: usize, which: Extremum) -> (f64, f64) {
    let mut num = 0.0;
    let mut den = 0.0;
    for i in 0..set.len() {
        let w = match which {
            Extremum::Left => {
                if i <= switch {
                    set.upper[i]
                } else {
                    set.lower[i]
                }
            }
            Extremum::Right => {
                if i <= switch {
                    set.lower[i]
                } else {
                    set.upper[i]
                }
            }
        };
        num += set.z_at(i) * w;
        den += w;
    }
    (num, den)
}

fn switch_index(set: &IntervalOutputSet, c: f64) -> usize {
    // Largest index whose abscissa does not exceed c; c always lies within
    // the grid because it is a weighted mean of grid points.
    let mut k = 0;
    for i in 0..set.len() {
        if set.z_at(i) <= c {
            k = i;
        } else {
            break;
        }
    }
    k
}

fn km_extremum(set: &IntervalOutputSet, which: Extremum) -> Result<f64, It2Error> {
    // Seed with the midpoint-weighted centroid.
    let mut num = 0.0;
    let mut den = 0.0;
    for i in 0..set.len() {
        let w = (set.lower[i] + set.upper[i]) / 2.0;
        num += set.z_at(i) * w;
        den += w;
    }
    let mut c = num / den;
    let mut switch = usize::MAX;

    for _ in 0..KM_MAX_ITERATIONS {
        let next_switch = switch_index(set, c);
        if next_switch == switch {
            return Ok(c);
        }
        switch = next_switch;
        let (num, den) = weighted_mean_with_switch(set, switch, which);
        if den == 0.0 {
            // All remaining mass sat exactly at the previous centroid; that
            // boundary vertex is the extremum.
            return Ok(c);
        }
        c = num / den;
    }
    Err(It2Error::NonConvergence(KM_MAX_ITERATIONS))
}

/// Defuzzify a centroid interval to its midpoint.
pub fn defuzz_interval(c: &CentroidInterval) -> f64 {
    (c.left + c.right) / 2.0
}

/// Convenience composition of type reduction and interval defuzzification,
/// propagating the vacuous diagnostic.
pub fn reduce_and_defuzz(set: &IntervalOutputSet) -> Result<CrispOutput, It2Error> {
    let reduced = km_type_reduce(set)?;
    Ok(CrispOutput {
        value: defuzz_interval(&reduced.interval),
        vacuous: reduced.vacuous,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fuzzy::{centroid_defuzz, infer_t1, Label};
    use proptest::prelude::*;

    fn tri(a: f64, b: f64, c: f64) -> TriangularMF {
        TriangularMF::new(a, b, c, Label::Z).unwrap()
    }

    /// Brute-force oracle: enumerate every switch position on both sides
    /// and take the extrema of the resulting weighted means.
    fn enumerate_extrema(set: &IntervalOutputSet) -> (f64, f64) {
        let n = set.len();
        let mut min = f64::INFINITY;
        let mut max = f64::NEG_INFINITY;
        for split in 0..=n {
            let mut num_l = 0.0;
            let mut den_l = 0.0;
            let mut num_r = 0.0;
            let mut den_r = 0.0;
            for i in 0..n {
                let z = set.z_at(i);
                let (wl, wr) = if i < split {
                    (set.upper()[i], set.lower()[i])
                } else {
                    (set.lower()[i], set.upper()[i])
                };
                num_l += z * wl;
                den_l += wl;
                num_r += z * wr;
                den_r += wr;
            }
            if den_l > 0.0 {
                min = min.min(num_l / den_l);
            }
            if den_r > 0.0 {
                max = max.max(num_r / den_r);
            }
        }
        (min, max)
    }

    #[test]
    fn blur_zero_movement_is_identity() {
        let mf = tri(-45.0, 0.0, 45.0);
        let imf = blur_mf(&mf, 0.0).unwrap();
        let mut x = -60.0;
        while x <= 60.0 {
            let (l, u) = imf.grade(x);
            let g = mf.grade(x);
            assert_eq!(l, g, "lmf != source at {x}");
            assert_eq!(u, g, "umf != source at {x}");
            x += 0.5;
        }
    }

    #[test]
    fn blur_movement_10_matches_analytic_envelope() {
        let imf = blur_mf(&tri(-45.0, 0.0, 45.0), 10.0).unwrap();
        assert_eq!(imf.umf_corners(), (-55.0, -10.0, 10.0, 55.0));
        // LMF is the triangle on (-35, 35) with apex height 1 - 10/45.
        let h = 1.0 - 10.0 / 45.0;
        assert!((imf.lmf_apex_height() - h).abs() < 1e-12);
        assert!((imf.lower_grade(0.0) - h).abs() < 1e-12);
        assert_eq!(imf.lower_grade(-35.0), 0.0);
        assert_eq!(imf.lower_grade(35.0), 0.0);
        // Falling side of the min envelope: (35 - x) / 45.
        assert!((imf.lower_grade(17.5) - (35.0 - 17.5) / 45.0).abs() < 1e-12);
        // UMF flat top and shoulders.
        assert_eq!(imf.upper_grade(-10.0), 1.0);
        assert_eq!(imf.upper_grade(10.0), 1.0);
        assert!((imf.upper_grade(-32.5) - 0.5).abs() < 1e-12);
    }

    #[test]
    fn blur_past_half_width_clamps_lmf_to_zero() {
        let imf = blur_mf(&tri(-15.0, 0.0, 15.0), 25.0).unwrap();
        assert_eq!(imf.umf_corners(), (-40.0, -25.0, 25.0, 40.0));
        assert_eq!(imf.lmf_apex_height(), 0.0);
        let mut x = -45.0;
        while x <= 45.0 {
            assert_eq!(imf.lower_grade(x), 0.0, "lmf not vacuous at {x}");
            x += 0.5;
        }
    }

    #[test]
    fn negative_movement_rejected() {
        assert_eq!(
            blur_mf(&tri(-45.0, 0.0, 45.0), -1.0).unwrap_err(),
            It2Error::NegativeShift(-1.0)
        );
    }

    #[test]
    fn interval_grade_closed_forms() {
        for m in [0.0, 5.0, 10.0, 20.0, 45.0] {
            let imf = blur_mf(&tri(-45.0, 0.0, 45.0), m).unwrap();
            let (l, u) = imf.grade(0.0);
            assert_eq!(u, 1.0);
            assert!((l - (1.0 - m / 45.0).max(0.0)).abs() < 1e-12);
        }
        let imf = blur_mf(&tri(-45.0, 0.0, 45.0), 10.0).unwrap();
        assert_eq!(imf.grade(80.0), (0.0, 0.0));
    }

    #[test]
    fn lmf_below_umf_everywhere() {
        for m in [0.0, 3.0, 10.0, 25.0, 50.0] {
            let imf = blur_mf(&tri(-45.0, 0.0, 45.0), m).unwrap();
            let mut x = -120.0;
            while x <= 120.0 {
                let (l, u) = imf.grade(x);
                assert!(l <= u + 1e-15, "order violated at x={x}, m={m}");
                assert!((0.0..=1.0).contains(&l) && (0.0..=1.0).contains(&u));
                x += 0.25;
            }
        }
    }

    fn pipeline_banks() -> (MFBank, MFBank, MFBank, RuleBase) {
        (
            MFBank::uniform(90.0).unwrap(),
            MFBank::uniform(30.0).unwrap(),
            MFBank::uniform(15.0).unwrap(),
            RuleBase::macvicar_whelan(),
        )
    }

    #[test]
    fn zero_fou_reduces_to_type1_surfaces() {
        let (eb, db, ob, rules) = pipeline_banks();
        let beb = BlurredBank::from_bank(&eb, 0.0).unwrap();
        let bdb = BlurredBank::from_bank(&db, 0.0).unwrap();
        for &(e, d) in &[(0.0, 0.0), (10.0, 0.0), (-37.0, 12.0), (90.0, -30.0)] {
            let t1 = infer_t1(&rules, e, d, &eb, &db, &ob, 201).unwrap();
            let it2 = infer_it2(&rules, e, d, &beb, &bdb, &ob, 201).unwrap();
            for i in 0..201 {
                assert_eq!(it2.lower()[i], t1.grades()[i], "lower differs at {i}");
                assert_eq!(it2.upper()[i], t1.grades()[i], "upper differs at {i}");
            }
        }
    }

    #[test]
    fn surfaces_bracket_type1_grades() {
        let (eb, db, ob, rules) = pipeline_banks();
        let beb = BlurredBank::from_bank(&eb, 10.0).unwrap();
        let bdb = BlurredBank::from_bank(&db, 10.0).unwrap();
        let t1 = infer_t1(&rules, 10.0, 0.0, &eb, &db, &ob, 201).unwrap();
        let it2 = infer_it2(&rules, 10.0, 0.0, &beb, &bdb, &ob, 201).unwrap();
        for i in 0..201 {
            assert!(it2.lower()[i] <= t1.grades()[i] + 1e-12);
            assert!(it2.upper()[i] >= t1.grades()[i] - 1e-12);
        }
    }

    #[test]
    fn origin_is_symmetric_for_any_fou() {
        let (eb, db, ob, rules) = pipeline_banks();
        for m in [0.0, 10.0, 25.0] {
            let beb = BlurredBank::from_bank(&eb, m).unwrap();
            let bdb = BlurredBank::from_bank(&db, m).unwrap();
            let set = infer_it2(&rules, 0.0, 0.0, &beb, &bdb, &ob, 201).unwrap();
            for i in 0..201 {
                assert!((set.lower()[i] - set.lower()[200 - i]).abs() < 1e-12);
                assert!((set.upper()[i] - set.upper()[200 - i]).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn km_degenerate_intervals_match_centroid() {
        let (eb, db, ob, rules) = pipeline_banks();
        let t1 = infer_t1(&rules, 10.0, 0.0, &eb, &db, &ob, 201).unwrap();
        let set = IntervalOutputSet::new(-15.0, 15.0, t1.grades().to_vec(), t1.grades().to_vec()).unwrap();
        let reduced = km_type_reduce(&set).unwrap();
        let c = centroid_defuzz(&t1);
        assert_eq!(reduced.interval.left, c.value);
        assert_eq!(reduced.interval.right, c.value);
    }

    #[test]
    fn km_five_point_example_matches_enumeration() {
        let set = IntervalOutputSet::new(-2.0, 2.0, vec![0.2; 5], vec![1.0; 5]).unwrap();
        let reduced = km_type_reduce(&set).unwrap();
        let (lo, hi) = enumerate_extrema(&set);
        assert!((reduced.interval.left - lo).abs() < 1e-12);
        assert!((reduced.interval.right - hi).abs() < 1e-12);
        // Frozen from the enumeration: extrema sit at the second switch
        // position, -2.4/2.6 = -12/13.
        assert!((reduced.interval.left - (-12.0 / 13.0)).abs() < 1e-9);
        assert!((reduced.interval.right - 12.0 / 13.0).abs() < 1e-9);
    }

    #[test]
    fn km_symmetric_set_is_antisymmetric() {
        let lower = vec![0.0, 0.1, 0.5, 0.1, 0.0];
        let upper = vec![0.2, 0.6, 1.0, 0.6, 0.2];
        let set = IntervalOutputSet::new(-10.0, 10.0, lower, upper).unwrap();
        let reduced = km_type_reduce(&set).unwrap();
        assert!((reduced.interval.left + reduced.interval.right).abs() < 1e-12);
    }

    #[test]
    fn km_all_zero_upper_flags_vacuous() {
        let set = IntervalOutputSet::new(-10.0, 10.0, vec![0.0; 5], vec![0.0; 5]).unwrap();
        let reduced = km_type_reduce(&set).unwrap();
        assert!(reduced.vacuous);
        assert_eq!(reduced.interval.left, 0.0);
        assert_eq!(reduced.interval.right, 0.0);
    }

    #[test]
    fn km_single_support_point_collapses() {
        let mut upper = vec![0.0; 7];
        upper[4] = 0.8;
        let set = IntervalOutputSet::new(-3.0, 3.0, vec![0.0; 7], upper).unwrap();
        let reduced = km_type_reduce(&set).unwrap();
        assert_eq!(reduced.interval.left, set.z_at(4));
        assert_eq!(reduced.interval.right, set.z_at(4));
    }

    #[test]
    fn km_two_point_boundary_vertex() {
        // Upper mass only at the ends, lower surface vacuous: the interval
        // must reach both endpoints.
        let set = IntervalOutputSet::new(-1.0, 1.0, vec![0.0; 10], {
            let mut u = vec![0.0; 10];
            u[0] = 1.0;
            u[9] = 1.0;
            u
        })
        .unwrap();
        let reduced = km_type_reduce(&set).unwrap();
        let (lo, hi) = enumerate_extrema(&set);
        assert!((reduced.interval.left - lo).abs() < 1e-12);
        assert!((reduced.interval.right - hi).abs() < 1e-12);
        assert_eq!(reduced.interval.left, -1.0);
        assert_eq!(reduced.interval.right, 1.0);
    }

    #[test]
    fn defuzz_interval_examples() {
        assert_eq!(defuzz_interval(&CentroidInterval { left: -3.0, right: 3.0 }), 0.0);
        assert_eq!(defuzz_interval(&CentroidInterval { left: 2.0, right: 4.0 }), 3.0);
        assert_eq!(defuzz_interval(&CentroidInterval { left: 1.25, right: 1.25 }), 1.25);
    }

    #[test]
    fn fou_zero_end_to_end_equivalence_on_grid() {
        let (eb, db, ob, rules) = pipeline_banks();
        let beb = BlurredBank::from_bank(&eb, 0.0).unwrap();
        let bdb = BlurredBank::from_bank(&db, 0.0).unwrap();
        let mut e = -90.0;
        while e <= 90.0 {
            let mut d = -30.0;
            while d <= 30.0 {
                let t1 = centroid_defuzz(&infer_t1(&rules, e, d, &eb, &db, &ob, 201).unwrap());
                let it2 = reduce_and_defuzz(&infer_it2(&rules, e, d, &beb, &bdb, &ob, 201).unwrap()).unwrap();
                assert!(
                    (t1.value - it2.value).abs() < 1e-9,
                    "divergence at ({e}, {d}): {} vs {}",
                    t1.value,
                    it2.value
                );
                d += 5.0;
            }
            e += 5.0;
        }
    }

    #[test]
    fn containment_and_monotone_widening() {
        let (eb, db, ob, rules) = pipeline_banks();
        let sizes = [0.0, 5.0, 10.0, 15.0, 20.0, 25.0];
        let blurred: Vec<(BlurredBank, BlurredBank)> = sizes
            .iter()
            .map(|&m| {
                (
                    BlurredBank::from_bank(&eb, m).unwrap(),
                    BlurredBank::from_bank(&db, m).unwrap(),
                )
            })
            .collect();
        let mut e = -90.0;
        while e <= 90.0 {
            let mut d = -30.0;
            while d <= 30.0 {
                let t1 = centroid_defuzz(&infer_t1(&rules, e, d, &eb, &db, &ob, 201).unwrap());
                let mut prev_width = -1.0;
                for (i, (beb, bdb)) in blurred.iter().enumerate() {
                    let set = infer_it2(&rules, e, d, beb, bdb, &ob, 201).unwrap();
                    let reduced = km_type_reduce(&set).unwrap();
                    assert!(
                        reduced.interval.left - 1e-9 <= t1.value && t1.value <= reduced.interval.right + 1e-9,
                        "containment broken at ({e}, {d}), m={}",
                        sizes[i]
                    );
                    let width = reduced.interval.width();
                    assert!(
                        width >= prev_width - 1e-9,
                        "width shrank at ({e}, {d}), m={}: {width} < {prev_width}",
                        sizes[i]
                    );
                    prev_width = width;
                }
                d += 10.0;
            }
            e += 10.0;
        }
    }

    #[test]
    fn it2_pipeline_antisymmetry() {
        let (eb, db, ob, rules) = pipeline_banks();
        let beb = BlurredBank::from_bank(&eb, 10.0).unwrap();
        let bdb = BlurredBank::from_bank(&db, 10.0).unwrap();
        let mut e = -90.0;
        while e <= 90.0 {
            let mut d = -30.0;
            while d <= 30.0 {
                let pos = reduce_and_defuzz(&infer_it2(&rules, e, d, &beb, &bdb, &ob, 201).unwrap()).unwrap();
                let neg = reduce_and_defuzz(&infer_it2(&rules, -e, -d, &beb, &bdb, &ob, 201).unwrap()).unwrap();
                assert!((pos.value + neg.value).abs() < 1e-9, "asymmetry at ({e}, {d})");
                d += 5.0;
            }
            e += 5.0;
        }
    }

    prop_compose! {
        fn arb_interval_set()(n in 2usize..=12)(
            bounds in (-50.0f64..0.0, 1.0f64..50.0),
            grades in proptest::collection::vec((0.0f64..=1.0, 0.0f64..=1.0), n),
        ) -> IntervalOutputSet {
            let lower: Vec<f64> = grades.iter().map(|&(a, b)| a.min(b)).collect();
            let upper: Vec<f64> = grades.iter().map(|&(a, b)| a.max(b)).collect();
            IntervalOutputSet::new(bounds.0, bounds.1, lower, upper).unwrap()
        }
    }

    proptest! {
        #[test]
        fn km_matches_enumeration_on_random_sets(set in arb_interval_set()) {
            let reduced = km_type_reduce(&set).unwrap();
            if set.upper().iter().all(|&u| u == 0.0) {
                prop_assert!(reduced.vacuous);
            } else {
                let (lo, hi) = enumerate_extrema(&set);
                prop_assert!((reduced.interval.left - lo).abs() < 1e-9);
                prop_assert!((reduced.interval.right - hi).abs() < 1e-9);
                prop_assert!(reduced.interval.left <= reduced.interval.right + 1e-12);
                prop_assert!(reduced.interval.left >= set.domain_min() - 1e-9);
                prop_assert!(reduced.interval.right <= set.domain_max() + 1e-9);
            }
        }
    }
}
