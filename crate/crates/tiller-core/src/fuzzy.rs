//! Type-1 fuzzy machinery: triangular membership functions, five-term
//! banks, a PD-style rule base, Mamdani min/max inference and centroid
//! defuzzification.
//!
//! Everything here is a pure function of immutable values; banks and rule
//! bases are validated once at construction and never mutated.

use thiserror::Error;

#[derive(Debug, Error, PartialEq)]
pub enum FuzzyError {
    #[error("membership function feet out of order: {left} <= {apex} <= {right} required")]
    MalformedMf { left: f64, apex: f64, right: f64 },
    #[error("membership bank needs exactly 5 functions, got {0}")]
    WrongBankSize(usize),
    #[error("bank apexes must be strictly increasing")]
    ApexOrder,
    #[error("universe bounds out of order")]
    UniverseOrder,
    #[error("membership bank leaves part of the universe uncovered")]
    CoverageGap,
    #[error("rule consequent index {0} outside -2..=2")]
    ConsequentRange(i8),
    #[error("rule base is not point-symmetric")]
    RuleAsymmetry,
    #[error("output grid needs at least 2 points, got {0}")]
    GridTooSmall(usize),
}

/// Linguistic labels of the five-term banks, ordered along the universe.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Label {
    NB,
    NS,
    Z,
    PS,
    PB,
}

impl Label {
    pub const ALL: [Label; 5] = [Label::NB, Label::NS, Label::Z, Label::PS, Label::PB];

    /// Position in the bank, 0..5.
    pub fn index(self) -> usize {
        match self {
            Label::NB => 0,
            Label::NS => 1,
            Label::Z => 2,
            Label::PS => 3,
            Label::PB => 4,
        }
    }

    /// Signed offset from the centre term, -2..=2.
    pub fn offset(self) -> i8 {
        self.index() as i8 - 2
    }

    pub fn from_index(i: usize) -> Option<Label> {
        Label::ALL.get(i).copied()
    }
}

impl std::fmt::Display for Label {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s = match self {
            Label::NB => "NB",
            Label::NS => "NS",
            Label::Z => "Z",
            Label::PS => "PS",
            Label::PB => "PB",
        };
        f.write_str(s)
    }
}

/// A triangular membership function over degrees.
///
/// Membership is 0 outside `[left_foot, right_foot]`, 1 at the apex and
/// piecewise linear in between. Degenerate edges (`left_foot == apex` or
/// `apex == right_foot`) are allowed and behave as half-triangles.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TriangularMF {
    left_foot: f64,
    apex: f64,
    right_foot: f64,
    label: Label,
}

impl TriangularMF {
    pub fn new(left_foot: f64, apex: f64, right_foot: f64, label: Label) -> Result<Self, FuzzyError> {
        if !(left_foot <= apex && apex <= right_foot)
            || !left_foot.is_finite()
            || !apex.is_finite()
            || !right_foot.is_finite()
        {
            return Err(FuzzyError::MalformedMf {
                left: left_foot,
                apex,
                right: right_foot,
            });
        }
        Ok(Self {
            left_foot,
            apex,
            right_foot,
            label,
        })
    }

    pub fn left_foot(&self) -> f64 {
        self.left_foot
    }

    pub fn apex(&self) -> f64 {
        self.apex
    }

    pub fn right_foot(&self) -> f64 {
        self.right_foot
    }

    pub fn label(&self) -> Label {
        self.label
    }

    /// Half-width of the support on each side of the apex. Only meaningful
    /// for the symmetric triangles the default banks use.
    pub fn half_width(&self) -> f64 {
        (self.right_foot - self.left_foot) / 2.0
    }

    /// Membership grade of `x`, in [0, 1]. Exactly 1.0 at the apex.
    pub fn grade(&self, x: f64) -> f64 {
        triangle_grade(self.left_foot, self.apex, self.right_foot, x)
    }

    /// The same triangle moved along the universe by `t` degrees.
    pub fn shifted(&self, t: f64) -> TriangularMF {
        TriangularMF {
            left_foot: self.left_foot + t,
            apex: self.apex + t,
            right_foot: self.right_foot + t,
            label: self.label,
        }
    }
}

pub(crate) fn triangle_grade(a: f64, b: f64, c: f64, x: f64) -> f64 {
    if x < a || x > c {
        0.0
    } else if x == b {
        1.0
    } else if x < b {
        (x - a) / (b - a)
    } else {
        (c - x) / (c - b)
    }
}

/// An ordered five-term bank of triangular membership functions covering a
/// universe of discourse.
///
/// Supports may extend past the universe bounds; inputs are clamped to the
/// universe before fuzzification, so the overhang is never evaluated.
#[derive(Debug, Clone, PartialEq)]
pub struct MFBank {
    universe_min: f64,
    universe_max: f64,
    mfs: Vec<TriangularMF>,
}

impl MFBank {
    pub fn new(universe_min: f64, universe_max: f64, mfs: Vec<TriangularMF>) -> Result<Self, FuzzyError> {
        if universe_min >= universe_max {
            return Err(FuzzyError::UniverseOrder);
        }
        if mfs.len() != 5 {
            return Err(FuzzyError::WrongBankSize(mfs.len()));
        }
        for pair in mfs.windows(2) {
            if pair[0].apex >= pair[1].apex {
                return Err(FuzzyError::ApexOrder);
            }
            // Adjacent supports must overlap or the universe has holes.
            if pair[0].right_foot <= pair[1].left_foot {
                return Err(FuzzyError::CoverageGap);
            }
        }
        let first = &mfs[0];
        let last = &mfs[4];
        if first.grade(universe_min) <= 0.0 || last.grade(universe_max) <= 0.0 {
            return Err(FuzzyError::CoverageGap);
        }
        Ok(Self {
            universe_min,
            universe_max,
            mfs,
        })
    }

    /// The standard symmetric layout: five triangles with apexes evenly
    /// spaced over `[-half_range, half_range]` and 50% overlap (half-width
    /// equal to the apex spacing). Edge triangles overhang the universe.
    pub fn uniform(half_range: f64) -> Result<Self, FuzzyError> {
        if !(half_range > 0.0) {
            return Err(FuzzyError::UniverseOrder);
        }
        let w = half_range / 2.0;
        let mfs = Label::ALL
            .iter()
            .map(|&label| {
                let apex = label.offset() as f64 * w;
                TriangularMF::new(apex - w, apex, apex + w, label)
            })
            .collect::<Result<Vec<_>, _>>()?;
        Self::new(-half_range, half_range, mfs)
    }

    pub fn universe_min(&self) -> f64 {
        self.universe_min
    }

    pub fn universe_max(&self) -> f64 {
        self.universe_max
    }

    pub fn mfs(&self) -> &[TriangularMF] {
        &self.mfs
    }

    /// Clamp an input into the universe. Out-of-range inputs are legal and
    /// saturate rather than erroring.
    pub fn clamp(&self, x: f64) -> f64 {
        x.clamp(self.universe_min, self.universe_max)
    }

    /// Membership grades of a (clamped) input in all five terms.
    pub fn grades(&self, x: f64) -> [f64; 5] {
        let x = self.clamp(x);
        let mut out = [0.0; 5];
        for (g, mf) in out.iter_mut().zip(&self.mfs) {
            *g = mf.grade(x);
        }
        out
    }
}

/// The 5x5 rule table mapping (error term, delta-error term) to a
/// rudder-change term, stored as signed offsets in -2..=2.
///
/// Construction enforces point symmetry: the rule for (-i, -j) is the
/// negation of the rule for (i, j), so zero error and zero delta always
/// command zero rudder change.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RuleBase {
    consequents: [[i8; 5]; 5],
}

impl RuleBase {
    pub fn new(consequents: [[i8; 5]; 5]) -> Result<Self, FuzzyError> {
        for row in &consequents {
            for &c in row {
                if !(-2..=2).contains(&c) {
                    return Err(FuzzyError::ConsequentRange(c));
                }
            }
        }
        for i in 0..5 {
            for j in 0..5 {
                if consequents[4 - i][4 - j] != -consequents[i][j] {
                    return Err(FuzzyError::RuleAsymmetry);
                }
            }
        }
        Ok(Self { consequents })
    }

    /// The Macvicar-Whelan PD table: consequent offset is the clamped sum
    /// of the antecedent offsets.
    pub fn macvicar_whelan() -> Self {
        let mut consequents = [[0i8; 5]; 5];
        for (i, row) in consequents.iter_mut().enumerate() {
            for (j, c) in row.iter_mut().enumerate() {
                let sum = (i as i8 - 2) + (j as i8 - 2);
                *c = sum.clamp(-2, 2);
            }
        }
        Self { consequents }
    }

    /// Consequent offset for a rule, -2..=2.
    pub fn consequent(&self, error_idx: usize, delta_idx: usize) -> i8 {
        self.consequents[error_idx][delta_idx]
    }

    /// Consequent term position for a rule, 0..5.
    pub fn consequent_index(&self, error_idx: usize, delta_idx: usize) -> usize {
        (self.consequents[error_idx][delta_idx] + 2) as usize
    }
}

/// An aggregated output fuzzy set sampled on a uniform grid.
#[derive(Debug, Clone, PartialEq)]
pub struct OutputFuzzySet {
    domain_min: f64,
    domain_max: f64,
    grades: Vec<f64>,
}

impl OutputFuzzySet {
    pub fn zeros(domain_min: f64, domain_max: f64, points: usize) -> Result<Self, FuzzyError> {
        if points < 2 {
            return Err(FuzzyError::GridTooSmall(points));
        }
        if domain_min >= domain_max {
            return Err(FuzzyError::UniverseOrder);
        }
        Ok(Self {
            domain_min,
            domain_max,
            grades: vec![0.0; points],
        })
    }

    pub fn from_grades(domain_min: f64, domain_max: f64, grades: Vec<f64>) -> Result<Self, FuzzyError> {
        let mut set = Self::zeros(domain_min, domain_max, grades.len())?;
        set.grades = grades;
        Ok(set)
    }

    pub fn domain_min(&self) -> f64 {
        self.domain_min
    }

    pub fn domain_max(&self) -> f64 {
        self.domain_max
    }

    pub fn len(&self) -> usize {
        self.grades.len()
    }

    pub fn is_empty(&self) -> bool {
        self.grades.is_empty()
    }

    pub fn grades(&self) -> &[f64] {
        &self.grades
    }

    pub(crate) fn grades_mut(&mut self) -> &mut [f64] {
        &mut self.grades
    }

    /// Grid abscissa of sample `i`.
    pub fn z_at(&self, i: usize) -> f64 {
        grid_point(self.domain_min, self.domain_max, self.grades.len(), i)
    }
}

pub(crate) fn grid_point(min: f64, max: f64, points: usize, i: usize) -> f64 {
    min + i as f64 * ((max - min) / (points - 1) as f64)
}

/// A defuzzified value plus the vacuous-output diagnostic.
///
/// `vacuous` is raised when the aggregated set carried no membership mass
/// at all, which signals a rule-coverage hole upstream; the value is 0.0 in
/// that case.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CrispOutput {
    pub value: f64,
    pub vacuous: bool,
}

/// Mamdani type-1 inference over the 25-rule table.
///
/// Inputs are clamped to their universes, each rule fires at the min of its
/// two antecedent grades, consequent terms are clipped at the firing
/// strength, and rules aggregate by pointwise max.
pub fn infer_t1(
    rules: &RuleBase,
    error: f64,
    delta: f64,
    error_bank: &MFBank,
    delta_bank: &MFBank,
    output_bank: &MFBank,
    grid_points: usize,
) -> Result<OutputFuzzySet, FuzzyError> {
    let error_grades = error_bank.grades(error);
    let delta_grades = delta_bank.grades(delta);
    let mut set = OutputFuzzySet::zeros(output_bank.universe_min(), output_bank.universe_max(), grid_points)?;

    for (i, &ge) in error_grades.iter().enumerate() {
        if ge == 0.0 {
            continue;
        }
        for (j, &gd) in delta_grades.iter().enumerate() {
            if gd == 0.0 {
                continue;
            }
            let firing = ge.min(gd);
            let consequent = &output_bank.mfs()[rules.consequent_index(i, j)];
            for k in 0..grid_points {
                let z = grid_point(output_bank.universe_min(), output_bank.universe_max(), grid_points, k);
                let clipped = firing.min(consequent.grade(z));
                let slot = &mut set.grades_mut()[k];
                if clipped > *slot {
                    *slot = clipped;
                }
            }
        }
    }
    Ok(set)
}

/// Centroid defuzzification: the membership-weighted mean of the grid.
///
/// An all-zero set defuzzifies to 0.0 with the vacuous flag raised.
pub fn centroid_defuzz(set: &OutputFuzzySet) -> CrispOutput {
    let mut num = 0.0;
    let mut den = 0.0;
    for (i, &g) in set.grades().iter().enumerate() {
        num += set.z_at(i) * g;
        den += g;
    }
    if den == 0.0 {
        CrispOutput {
            value: 0.0,
            vacuous: true,
        }
    } else {
        CrispOutput {
            value: num / den,
            vacuous: false,
        }
    }
}
