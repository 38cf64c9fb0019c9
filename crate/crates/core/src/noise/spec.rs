use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use num_traits::{Signed, Zero};

use super::NoiseError;
use crate::exactalg::Rational;
use crate::gridmod::RationalPoint;

/// Standard noise in the direction of a finitely generated cone, measured
/// with the sup norm.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConeNoise {
    generators: Vec<RationalPoint>,
}

/// Standard noise in the direction of a finite sequence of vectors, measured
/// with `||w||_V = min { max a_j : w = sum a_j v_j, a_j >= 0 }`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VNormNoise {
    vectors: Vec<RationalPoint>,
}

/// Half-open box `prod [lower_i, upper_i)`; `None` is an infinite upper end.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RegionBox {
    pub lower: RationalPoint,
    pub upper: Vec<Option<Rational>>,
}

/// Finite union of boxes.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct Region {
    pub boxes: Vec<RegionBox>,
}

/// Domain noise: `F` is in the `eps` component when every nonzero value
/// sits inside `X_eps`, the region of the last step with threshold `<= eps`
/// (empty before the first step).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DomainNoise {
    steps: Vec<(Rational, Region)>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum DimBound {
    Finite(usize),
    Unbounded,
}

/// Dimension noise: `F` is in the `eps` component when every value has
/// dimension at most `n_eps`, a right-continuous step function.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DimensionNoise {
    steps: Vec<(Rational, DimBound)>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum NoiseSpec {
    Cone(ConeNoise),
    VNorm(VNormNoise),
    Domain(DomainNoise),
    Dimension(DimensionNoise),
    Intersection(Vec<NoiseSpec>),
}

fn check_vectors(vs: &[RationalPoint], what: &str) -> Result<usize, NoiseError> {
    let Some(first) = vs.first() else {
        return Err(NoiseError::InvalidSpec(format!("{what} needs at least one vector")));
    };
    let r = first.len();
    if r == 0 {
        return Err(NoiseError::InvalidSpec(format!("{what} vectors must be nonempty")));
    }
    for v in vs {
        if v.len() != r {
            return Err(NoiseError::InvalidSpec(format!("{what} vectors have different lengths")));
        }
        if v.iter().any(|x| x.is_negative()) {
            return Err(NoiseError::InvalidSpec(format!("{what} vectors must be non-negative")));
        }
        if v.iter().all(|x| x.is_zero()) {
            return Err(NoiseError::InvalidSpec(format!("{what} vectors must be nonzero")));
        }
    }
    Ok(r)
}

impl ConeNoise {
    pub fn new(generators: Vec<RationalPoint>) -> Result<Self, NoiseError> {
        check_vectors(&generators, "cone")?;
        Ok(ConeNoise { generators })
    }

    /// The cone spanned by a single vector.
    pub fn ray(direction: RationalPoint) -> Result<Self, NoiseError> {
        Self::new(alloc::vec![direction])
    }

    pub fn generators(&self) -> &[RationalPoint] {
        &self.generators
    }

    pub fn r(&self) -> usize {
        self.generators[0].len()
    }
}

impl VNormNoise {
    pub fn new(vectors: Vec<RationalPoint>) -> Result<Self, NoiseError> {
        check_vectors(&vectors, "vnorm")?;
        Ok(VNormNoise { vectors })
    }

    pub fn vectors(&self) -> &[RationalPoint] {
        &self.vectors
    }

    pub fn r(&self) -> usize {
        self.vectors[0].len()
    }
}

impl RegionBox {
    pub fn new(lower: RationalPoint, upper: Vec<Option<Rational>>) -> Result<Self, NoiseError> {
        if lower.len() != upper.len() || lower.is_empty() {
            return Err(NoiseError::InvalidSpec("box corners have different lengths".to_string()));
        }
        for (l, u) in lower.iter().zip(&upper) {
            if l.is_negative() {
                return Err(NoiseError::InvalidSpec("box corner is negative".to_string()));
            }
            if let Some(u) = u {
                if u <= l {
                    return Err(NoiseError::InvalidSpec("box is empty".to_string()));
                }
            }
        }
        Ok(RegionBox { lower, upper })
    }

    pub fn r(&self) -> usize {
        self.lower.len()
    }

    pub fn contains_point(&self, v: &[Rational]) -> bool {
        v.iter()
            .zip(&self.lower)
            .zip(&self.upper)
            .all(|((x, l), u)| x >= l && u.is_none_or(|u| *x < u))
    }
}

impl Region {
    pub fn new(boxes: Vec<RegionBox>) -> Self {
        Region { boxes }
    }

    pub fn contains_point(&self, v: &[Rational]) -> bool {
        self.boxes.iter().any(|b| b.contains_point(v))
    }

    /// Whether the half-open box `prod [lo_i, hi_i)` lies inside the union.
    pub fn contains_box(&self, lo: &[Rational], hi: &[Option<Rational>]) -> bool {
        let r = lo.len();
        // Split along every boundary that cuts the box; each piece is then
        // inside some box iff its lower corner is.
        let mut cuts: Vec<Vec<Rational>> = Vec::with_capacity(r);
        for i in 0..r {
            let mut c: Vec<Rational> = alloc::vec![lo[i]];
            for b in &self.boxes {
                let mut ends = alloc::vec![b.lower[i]];
                ends.extend(b.upper[i]);
                for e in ends {
                    if e > lo[i] && hi[i].is_none_or(|h| e < h) {
                        c.push(e);
                    }
                }
            }
            c.sort();
            c.dedup();
            cuts.push(c);
        }
        let mut idx = alloc::vec![0usize; r];
        loop {
            let corner: Vec<Rational> = (0..r).map(|i| cuts[i][idx[i]]).collect();
            if !self.contains_point(&corner) {
                return false;
            }
            let mut i = r;
            loop {
                if i == 0 {
                    return true;
                }
                i -= 1;
                idx[i] += 1;
                if idx[i] < cuts[i].len() {
                    break;
                }
                idx[i] = 0;
            }
        }
    }

    pub fn contains_region(&self, other: &Region) -> bool {
        other.boxes.iter().all(|b| self.contains_box(&b.lower, &b.upper))
    }
}

impl DomainNoise {
    pub fn new(steps: Vec<(Rational, Region)>) -> Result<Self, NoiseError> {
        if steps.is_empty() {
            return Err(NoiseError::InvalidSpec("domain noise needs at least one step".to_string()));
        }
        let r = steps.iter().flat_map(|(_, reg)| reg.boxes.iter().map(RegionBox::r)).next();
        for (k, (t, reg)) in steps.iter().enumerate() {
            if t.is_negative() {
                return Err(NoiseError::InvalidSpec("domain threshold is negative".to_string()));
            }
            if k > 0 && steps[k - 1].0 >= *t {
                return Err(NoiseError::InvalidSpec("domain thresholds must increase".to_string()));
            }
            if reg.boxes.iter().any(|b| Some(b.r()) != r) {
                return Err(NoiseError::InvalidSpec("domain boxes have different dimensions".to_string()));
            }
            if k > 0 && !reg.contains_region(&steps[k - 1].1) {
                return Err(NoiseError::InvalidSpec("domain regions must be nested".to_string()));
            }
        }
        Ok(DomainNoise { steps })
    }

    pub fn steps(&self) -> &[(Rational, Region)] {
        &self.steps
    }

    pub fn r(&self) -> Option<usize> {
        self.steps.iter().flat_map(|(_, reg)| reg.boxes.iter().map(RegionBox::r)).next()
    }
}

impl DimensionNoise {
    /// Steps `(threshold, n)`; `n_eps` is the value of the last step with
    /// threshold `<= eps`, and 0 before the first. Superadditivity is checked
    /// for pairs whose sum does not pass the last threshold.
    pub fn new(steps: Vec<(Rational, DimBound)>) -> Result<Self, NoiseError> {
        if steps.is_empty() {
            return Err(NoiseError::InvalidSpec("dimension noise needs at least one step".to_string()));
        }
        for (k, (t, n)) in steps.iter().enumerate() {
            if t.is_negative() {
                return Err(NoiseError::InvalidSpec("dimension threshold is negative".to_string()));
            }
            if t.is_zero() && *n != DimBound::Finite(0) {
                return Err(NoiseError::InvalidSpec("n_0 must be 0".to_string()));
            }
            if k > 0 && (steps[k - 1].0 >= *t || steps[k - 1].1 > *n) {
                return Err(NoiseError::InvalidSpec("dimension steps must increase".to_string()));
            }
        }
        let spec = DimensionNoise { steps };
        let last = spec.steps.last().expect("nonempty").0;
        for (a, na) in &spec.steps {
            for (b, nb) in &spec.steps {
                let s = a + b;
                if s > last {
                    continue;
                }
                let lhs = match (na, nb) {
                    (DimBound::Finite(x), DimBound::Finite(y)) => DimBound::Finite(x + y),
                    _ => DimBound::Unbounded,
                };
                if lhs > spec.n_at(s) {
                    return Err(NoiseError::InvalidSpec(format!("n is not superadditive at {a} + {b}")));
                }
            }
        }
        Ok(spec)
    }

    pub fn steps(&self) -> &[(Rational, DimBound)] {
        &self.steps
    }

    pub fn n_at(&self, eps: Rational) -> DimBound {
        self.steps.iter().take_while(|(t, _)| *t <= eps).last().map_or(DimBound::Finite(0), |(_, n)| *n)
    }
}

impl NoiseSpec {
    pub fn cone(generators: Vec<RationalPoint>) -> Result<Self, NoiseError> {
        ConeNoise::new(generators).map(NoiseSpec::Cone)
    }

    pub fn ray(direction: RationalPoint) -> Result<Self, NoiseError> {
        ConeNoise::ray(direction).map(NoiseSpec::Cone)
    }

    pub fn vnorm(vectors: Vec<RationalPoint>) -> Result<Self, NoiseError> {
        VNormNoise::new(vectors).map(NoiseSpec::VNorm)
    }

    pub fn intersection(parts: Vec<NoiseSpec>) -> Result<Self, NoiseError> {
        if parts.is_empty() {
            return Err(NoiseError::InvalidSpec("intersection of no noise systems".to_string()));
        }
        let mut r = None;
        for p in &parts {
            if let Some(pr) = p.r() {
                if r.is_some_and(|x| x != pr) {
                    return Err(NoiseError::InvalidSpec("intersected specs disagree on r".to_string()));
                }
                r = Some(pr);
            }
        }
        Ok(NoiseSpec::Intersection(parts))
    }

    /// The number of parameters the spec is tied to, if any.
    pub fn r(&self) -> Option<usize> {
        match self {
            NoiseSpec::Cone(c) => Some(c.r()),
            NoiseSpec::VNorm(v) => Some(v.r()),
            NoiseSpec::Domain(d) => d.r(),
            NoiseSpec::Dimension(_) => None,
            NoiseSpec::Intersection(ps) => ps.iter().find_map(NoiseSpec::r),
        }
    }

    pub fn is_cone_like(&self) -> bool {
        matches!(self, NoiseSpec::Cone(_) | NoiseSpec::VNorm(_))
    }
}

fn parse_rational(s: &str) -> Result<Rational, NoiseError> {
    let s = s.trim();
    Rational::from_str(s).map_err(|_| NoiseError::Parse(format!("bad rational '{s}'")))
}

fn parse_upper(s: &str) -> Result<Option<Rational>, NoiseError> {
    if s.trim() == "inf" {
        Ok(None)
    } else {
        parse_rational(s).map(Some)
    }
}

fn parse_vectors(s: &str) -> Result<Vec<RationalPoint>, NoiseError> {
    s.split(';').map(|v| v.split(',').map(parse_rational).collect()).collect()
}

fn parse_box(s: &str) -> Result<RegionBox, NoiseError> {
    let s = s.trim();
    let inner = s
        .strip_prefix("box(")
        .and_then(|x| x.strip_suffix(')'))
        .ok_or_else(|| NoiseError::Parse(format!("expected box(...), got '{s}'")))?;
    let parts: Vec<&str> = inner.split(',').collect();
    if !parts.len().is_multiple_of(2) || parts.is_empty() {
        return Err(NoiseError::Parse(format!("box needs 2r coordinates: '{s}'")));
    }
    let r = parts.len() / 2;
    let lower = parts[..r].iter().map(|x| parse_rational(x)).collect::<Result<_, _>>()?;
    let upper = parts[r..].iter().map(|x| parse_upper(x)).collect::<Result<_, _>>()?;
    RegionBox::new(lower, upper)
}

impl FromStr for NoiseSpec {
    type Err = NoiseError;

    /// `cone:1,1`, `cone:1,0,1;1/2,1,0`, `vnorm:1,0;0,1`,
    /// `dim:0@0,2@1,inf@3`, `domain:@0=box(0,0,1,1);@1=box(0,0,3,3)|box(3,0,inf,1)`,
    /// and `&` between specs for their intersection.
    fn from_str(s: &str) -> Result<Self, NoiseError> {
        let s = s.trim();
        if s.contains('&') {
            let parts = s.split('&').map(NoiseSpec::from_str).collect::<Result<Vec<_>, _>>()?;
            return NoiseSpec::intersection(parts);
        }
        let (kind, body) = s.split_once(':').ok_or_else(|| NoiseError::Parse(format!("missing ':' in '{s}'")))?;
        match kind.trim() {
            "cone" | "ray" => NoiseSpec::cone(parse_vectors(body)?),
            "vnorm" => NoiseSpec::vnorm(parse_vectors(body)?),
            "dim" => {
                let steps = body
                    .split(',')
                    .map(|item| {
                        let (n, t) = item
                            .split_once('@')
                            .ok_or_else(|| NoiseError::Parse(format!("expected n@t, got '{item}'")))?;
                        let n = match n.trim() {
                            "inf" => DimBound::Unbounded,
                            x => DimBound::Finite(
                                x.parse().map_err(|_| NoiseError::Parse(format!("bad dimension '{x}'")))?,
                            ),
                        };
                        Ok((parse_rational(t)?, n))
                    })
                    .collect::<Result<Vec<_>, NoiseError>>()?;
                DimensionNoise::new(steps).map(NoiseSpec::Dimension)
            }
            "domain" => {
                let steps = body
                    .split(';')
                    .map(|item| {
                        let item = item.trim();
                        let rest = item
                            .strip_prefix('@')
                            .ok_or_else(|| NoiseError::Parse(format!("expected @t=..., got '{item}'")))?;
                        let (t, reg) = rest
                            .split_once('=')
                            .ok_or_else(|| NoiseError::Parse(format!("expected @t=..., got '{item}'")))?;
                        let boxes = if reg.trim() == "empty" {
                            Vec::new()
                        } else {
                            reg.split('|').map(parse_box).collect::<Result<Vec<_>, _>>()?
                        };
                        Ok((parse_rational(t)?, Region::new(boxes)))
                    })
                    .collect::<Result<Vec<_>, NoiseError>>()?;
                DomainNoise::new(steps).map(NoiseSpec::Domain)
            }
            other => Err(NoiseError::Parse(format!("unknown noise kind '{other}'"))),
        }
    }
}

fn write_vectors(f: &mut fmt::Formatter<'_>, vs: &[RationalPoint]) -> fmt::Result {
    for (k, v) in vs.iter().enumerate() {
        if k > 0 {
            write!(f, ";")?;
        }
        for (i, x) in v.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{x}")?;
        }
    }
    Ok(())
}

impl fmt::Display for NoiseSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            NoiseSpec::Cone(c) => {
                write!(f, "cone:")?;
                write_vectors(f, &c.generators)
            }
            NoiseSpec::VNorm(v) => {
                write!(f, "vnorm:")?;
                write_vectors(f, &v.vectors)
            }
            NoiseSpec::Dimension(d) => {
                write!(f, "dim:")?;
                for (k, (t, n)) in d.steps.iter().enumerate() {
                    if k > 0 {
                        write!(f, ",")?;
                    }
                    match n {
                        DimBound::Finite(n) => write!(f, "{n}@{t}")?,
                        DimBound::Unbounded => write!(f, "inf@{t}")?,
                    }
                }
                Ok(())
            }
            NoiseSpec::Domain(d) => {
                write!(f, "domain:")?;
                for (k, (t, reg)) in d.steps.iter().enumerate() {
                    if k > 0 {
                        write!(f, ";")?;
                    }
                    write!(f, "@{t}=")?;
                    if reg.boxes.is_empty() {
                        write!(f, "empty")?;
                    }
                    for (j, b) in reg.boxes.iter().enumerate() {
                        if j > 0 {
                            write!(f, "|")?;
                        }
                        write!(f, "box(")?;
                        let lo = b.lower.iter().map(|x| x.to_string());
                        let hi = b.upper.iter().map(|x| x.map_or_else(|| "inf".to_string(), |x| x.to_string()));
                        let all: Vec<String> = lo.chain(hi).collect();
                        write!(f, "{})", all.join(","))?;
                    }
                }
                Ok(())
            }
            NoiseSpec::Intersection(ps) => {
                for (k, p) in ps.iter().enumerate() {
                    if k > 0 {
                        write!(f, "&")?;
                    }
                    write!(f, "{p}")?;
                }
                Ok(())
            }
        }
    }
}
