//! Plain-text problem profiles. A profile file is a sequence of
//! `key: value` lines describing the corridor slopes, the final-slope
//! window, the reporting granularity and optional stop criteria. Parsing
//! is strict: unknown keys, duplicates, blank lines and malformed values
//! are all rejected with the offending line number, and serializing a
//! parsed profile reproduces the canonical form byte for byte.

use crate::engine::{EngineConfig, PriorityMode, ProblemSpec, SpecError, SplitRule};
use crate::kernel::{rat, PythagoreanAngle, Rational};
use num_traits::Signed;
use std::fmt;
use std::time::Duration;

#[derive(Clone, Debug, PartialEq)]
pub struct Profile {
    spec: ProblemSpec,
    report_granularity: Rational,
    target_upper: Option<Rational>,
    max_iterations: Option<u64>,
    max_time_seconds: Option<u64>,
    priority_mode: Option<PriorityMode>,
    split_rule: Option<SplitRule>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ProfileError {
    /// Line is not of the form `key: value` (blank lines count).
    MalformedLine(usize),
    UnknownKey { line: usize, key: String },
    DuplicateKey { line: usize, key: String },
    BadInteger(usize),
    BadTriple(usize),
    BadRational(usize),
    BadChoice(usize),
    /// Slope index is zero, exceeds the corridor count, or appears before
    /// the corridor count is known.
    SlopeIndexOutOfRange(usize),
    /// Slope lines must appear as slope 1, slope 2, ... in order.
    SlopeOrder(usize),
    NonPositiveValue(usize),
    MissingKey(String),
    Spec(SpecError),
}

impl fmt::Display for ProfileError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ProfileError::MalformedLine(l) => write!(f, "line {l}: expected 'key: value'"),
            ProfileError::UnknownKey { line, key } => write!(f, "line {line}: unknown key '{key}'"),
            ProfileError::DuplicateKey { line, key } => {
                write!(f, "line {line}: duplicate key '{key}'")
            }
            ProfileError::BadInteger(l) => write!(f, "line {l}: expected an unsigned integer"),
            ProfileError::BadTriple(l) => {
                write!(f, "line {l}: expected a Pythagorean triple 'a b c'")
            }
            ProfileError::BadRational(l) => {
                write!(f, "line {l}: expected a rational 'p/q' or integer")
            }
            ProfileError::BadChoice(l) => write!(f, "line {l}: unrecognized value"),
            ProfileError::SlopeIndexOutOfRange(l) => {
                write!(f, "line {l}: slope index out of range")
            }
            ProfileError::SlopeOrder(l) => {
                write!(f, "line {l}: slopes must appear in order 1, 2, ...")
            }
            ProfileError::NonPositiveValue(l) => write!(f, "line {l}: value must be positive"),
            ProfileError::MissingKey(k) => write!(f, "missing key '{k}'"),
            ProfileError::Spec(e) => write!(f, "invalid problem: {e}"),
        }
    }
}

impl std::error::Error for ProfileError {}

impl From<SpecError> for ProfileError {
    fn from(e: SpecError) -> Self {
        ProfileError::Spec(e)
    }
}

impl Profile {
    pub fn new(
        spec: ProblemSpec,
        report_granularity: Rational,
        target_upper: Option<Rational>,
        max_iterations: Option<u64>,
        max_time_seconds: Option<u64>,
        priority_mode: Option<PriorityMode>,
        split_rule: Option<SplitRule>,
    ) -> Self {
        Profile {
            spec,
            report_granularity,
            target_upper,
            max_iterations,
            max_time_seconds,
            priority_mode,
            split_rule,
        }
    }

    pub fn spec(&self) -> &ProblemSpec {
        &self.spec
    }

    pub fn report_granularity(&self) -> &Rational {
        &self.report_granularity
    }

    pub fn target_upper(&self) -> Option<&Rational> {
        self.target_upper.as_ref()
    }

    pub fn max_iterations(&self) -> Option<u64> {
        self.max_iterations
    }

    pub fn max_time_seconds(&self) -> Option<u64> {
        self.max_time_seconds
    }

    pub fn priority_mode(&self) -> Option<PriorityMode> {
        self.priority_mode
    }

    pub fn split_rule(&self) -> Option<SplitRule> {
        self.split_rule
    }

    /// Engine configuration implied by this profile. Modes default to the
    /// engine defaults when the profile leaves them unset.
    pub fn engine_config(&self) -> EngineConfig {
        let defaults = EngineConfig::default();
        EngineConfig {
            priority_mode: self.priority_mode.unwrap_or(defaults.priority_mode),
            split_rule: self.split_rule.unwrap_or(defaults.split_rule),
            target_upper: self.target_upper.clone(),
            max_iterations: self.max_iterations,
            max_time: self.max_time_seconds.map(Duration::from_secs),
            gap: None,
            report_granularity: self.report_granularity.clone(),
            closed_form_cap: true,
        }
    }
}

fn parse_u64(value: &str, line: usize) -> Result<u64, ProfileError> {
    value.parse::<u64>().map_err(|_| ProfileError::BadInteger(line))
}

fn parse_triple(value: &str, line: usize) -> Result<PythagoreanAngle, ProfileError> {
    let parts: Vec<&str> = value.split_whitespace().collect();
    if parts.len() != 3 {
        return Err(ProfileError::BadTriple(line));
    }
    let nums: Result<Vec<i64>, _> = parts.iter().map(|s| s.parse::<i64>()).collect();
    let nums = nums.map_err(|_| ProfileError::BadTriple(line))?;
    PythagoreanAngle::from_triple(nums[0], nums[1], nums[2])
        .map_err(|_| ProfileError::BadTriple(line))
}

fn parse_rational(value: &str, line: usize) -> Result<Rational, ProfileError> {
    let (num, den) = match value.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (value, "1"),
    };
    let n: i64 = num.parse().map_err(|_| ProfileError::BadRational(line))?;
    let d: i64 = den.parse().map_err(|_| ProfileError::BadRational(line))?;
    if d == 0 {
        return Err(ProfileError::BadRational(line));
    }
    Ok(rat(n, d))
}

pub fn parse_profile(text: &str) -> Result<Profile, ProfileError> {
    let mut corridors: Option<usize> = None;
    let mut slopes: Vec<PythagoreanAngle> = Vec::new();
    let mut min_final: Option<PythagoreanAngle> = None;
    let mut max_final: Option<PythagoreanAngle> = None;
    let mut granularity: Option<Rational> = None;
    let mut target_upper: Option<Rational> = None;
    let mut max_iterations: Option<u64> = None;
    let mut max_time_seconds: Option<u64> = None;
    let mut priority_mode: Option<PriorityMode> = None;
    let mut split_rule: Option<SplitRule> = None;

    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let raw = raw.strip_suffix('\r').unwrap_or(raw);
        let (key, value) = raw.split_once(':').ok_or(ProfileError::MalformedLine(line))?;
        let key = key.trim();
        let value = value.trim();
        if key.is_empty() || value.is_empty() {
            return Err(ProfileError::MalformedLine(line));
        }
        let dup = |key: &str| ProfileError::DuplicateKey { line, key: key.to_string() };
        match key {
            "corridors" => {
                if corridors.is_some() {
                    return Err(dup(key));
                }
                let n = parse_u64(value, line)? as usize;
                if n == 0 {
                    return Err(ProfileError::NonPositiveValue(line));
                }
                corridors = Some(n);
            }
            _ if key.starts_with("slope ") => {
                let n: usize = key["slope ".len()..]
                    .parse()
                    .map_err(|_| ProfileError::UnknownKey { line, key: key.to_string() })?;
                let k = corridors.ok_or(ProfileError::SlopeIndexOutOfRange(line))?;
                if n == 0 || n > k {
                    return Err(ProfileError::SlopeIndexOutOfRange(line));
                }
                if n != slopes.len() + 1 {
                    if n <= slopes.len() {
                        return Err(dup(key));
                    }
                    return Err(ProfileError::SlopeOrder(line));
                }
                slopes.push(parse_triple(value, line)?);
            }
            "min_final_slope" => {
                if min_final.is_some() {
                    return Err(dup(key));
                }
                min_final = Some(parse_triple(value, line)?);
            }
            "max_final_slope" => {
                if max_final.is_some() {
                    return Err(dup(key));
                }
                max_final = Some(parse_triple(value, line)?);
            }
            "report_granularity" => {
                if granularity.is_some() {
                    return Err(dup(key));
                }
                let g = parse_rational(value, line)?;
                if !g.is_positive() {
                    return Err(ProfileError::NonPositiveValue(line));
                }
                granularity = Some(g);
            }
            "target_upper" => {
                if target_upper.is_some() {
                    return Err(dup(key));
                }
                let t = parse_rational(value, line)?;
                if !t.is_positive() {
                    return Err(ProfileError::NonPositiveValue(line));
                }
                target_upper = Some(t);
            }
            "max_iterations" => {
                if max_iterations.is_some() {
                    return Err(dup(key));
                }
                let n = parse_u64(value, line)?;
                if n == 0 {
                    return Err(ProfileError::NonPositiveValue(line));
                }
                max_iterations = Some(n);
            }
            "max_time_seconds" => {
                if max_time_seconds.is_some() {
                    return Err(dup(key));
                }
                let n = parse_u64(value, line)?;
                if n == 0 {
                    return Err(ProfileError::NonPositiveValue(line));
                }
                max_time_seconds = Some(n);
            }
            "priority_mode" => {
                if priority_mode.is_some() {
                    return Err(dup(key));
                }
                priority_mode = Some(match value {
                    "total_area" => PriorityMode::TotalArea,
                    "largest_component" => PriorityMode::LargestComponent,
                    _ => return Err(ProfileError::BadChoice(line)),
                });
            }
            "split_rule" => {
                if split_rule.is_some() {
                    return Err(dup(key));
                }
                split_rule = Some(match value {
                    "d_area" => SplitRule::DArea,
                    "longest_dim" => SplitRule::LongestDim,
                    _ => return Err(ProfileError::BadChoice(line)),
                });
            }
            _ => return Err(ProfileError::UnknownKey { line, key: key.to_string() }),
        }
    }

    let k = corridors.ok_or_else(|| ProfileError::MissingKey("corridors".into()))?;
    if slopes.len() < k {
        return Err(ProfileError::MissingKey(format!("slope {}", slopes.len() + 1)));
    }
    let min_final = min_final.ok_or_else(|| ProfileError::MissingKey("min_final_slope".into()))?;
    let max_final = max_final.ok_or_else(|| ProfileError::MissingKey("max_final_slope".into()))?;
    let granularity =
        granularity.ok_or_else(|| ProfileError::MissingKey("report_granularity".into()))?;
    let spec = ProblemSpec::new(slopes, min_final, max_final)?;
    Ok(Profile {
        spec,
        report_granularity: granularity,
        target_upper,
        max_iterations,
        max_time_seconds,
        priority_mode,
        split_rule,
    })
}

fn rational_text(r: &Rational) -> String {
    if r.denom() == &num_bigint::BigInt::from(1) {
        format!("{}", r.numer())
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Canonical text form: required keys first in fixed order, then whichever
/// optional keys are set.
pub fn serialize_profile(p: &Profile) -> String {
    let mut out = String::new();
    out.push_str(&format!("corridors: {}\n", p.spec.k()));
    for (i, s) in p.spec.slopes().iter().enumerate() {
        out.push_str(&format!("slope {}: {}\n", i + 1, s));
    }
    out.push_str(&format!("min_final_slope: {}\n", p.spec.min_final()));
    out.push_str(&format!("max_final_slope: {}\n", p.spec.max_final()));
    out.push_str(&format!("report_granularity: {}\n", rational_text(&p.report_granularity)));
    if let Some(t) = &p.target_upper {
        out.push_str(&format!("target_upper: {}\n", rational_text(t)));
    }
    if let Some(n) = p.max_iterations {
        out.push_str(&format!("max_iterations: {n}\n"));
    }
    if let Some(n) = p.max_time_seconds {
        out.push_str(&format!("max_time_seconds: {n}\n"));
    }
    if let Some(m) = p.priority_mode {
        let name = match m {
            PriorityMode::TotalArea => "total_area",
            PriorityMode::LargestComponent => "largest_component",
        };
        out.push_str(&format!("priority_mode: {name}\n"));
    }
    if let Some(r) = p.split_rule {
        let name = match r {
            SplitRule::DArea => "d_area",
            SplitRule::LongestDim => "longest_dim",
        };
        out.push_str(&format!("split_rule: {name}\n"));
    }
    out
}

/// Profiles shipped with the binary.
pub const BUNDLED_NAMES: [&str; 5] =
    ["example-30-45-60", "thm9-bound1", "thm9-bound2", "thm9-bound3", "thm9-bound4"];

/// Returns the text of a bundled profile by name.
pub fn bundled(name: &str) -> Option<&'static str> {
    match name {
        "example-30-45-60" => Some(include_str!("../profiles/example-30-45-60.txt")),
        "thm9-bound1" => Some(include_str!("../profiles/thm9-bound1.txt")),
        "thm9-bound2" => Some(include_str!("../profiles/thm9-bound2.txt")),
        "thm9-bound3" => Some(include_str!("../profiles/thm9-bound3.txt")),
        "thm9-bound4" => Some(include_str!("../profiles/thm9-bound4.txt")),
        _ => None,
    }
}
