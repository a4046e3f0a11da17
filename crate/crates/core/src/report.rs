//! Classification reports: a stable JSON schema plus SVG and ASCII polygon
//! renderings.
//!
//! Every rational in the schema is an exact string (`p/q`, or `p` when the
//! denominator is 1); the only floating-point values are the log-magnitudes
//! of the growth profile. Coefficient exponents are reported on the `z` grid
//! (so a case solved in `t = √z` reports half-integer exponents with
//! `ramification: 2`), while support points and hull vertices stay in the
//! working variable of the polygon, which is how the classical tables list
//! them.

use num_rational::Rational64;
use serde::{Deserialize, Serialize};

use crate::corpus::CorpusCase;
use crate::diffsum::DiffSum;
use crate::exponent::RamifiedExponent;
use crate::gaussian::GaussianRational;
use crate::pipeline::Classification;
use crate::polygon::NewtonPolygon;
use crate::solver::growth_profile;

pub const SCHEMA_VERSION: &str = "1";

#[derive(Clone, PartialEq, Debug, Serialize, Deserialize)]
pub struct RatPair {
    pub re: String,
    pub im: String,
}

#[derive(Clone, PartialEq, Debug, Serialize, Deserialize)]
pub struct CoeffEntry {
    pub exponent: String,
    pub value: RatPair,
}

#[derive(Clone, PartialEq, Debug, Serialize, Deserialize)]
pub struct ReportParameters {
    pub alpha: RatPair,
    pub beta: RatPair,
    pub gamma: RatPair,
    pub delta: RatPair,
}

#[derive(Clone, PartialEq, Debug, Serialize, Deserialize)]
pub struct GrowthEntry {
    pub s: f64,
    pub log_magnitude: f64,
}

#[derive(Clone, PartialEq, Debug, Serialize, Deserialize)]
pub struct ClassificationReport {
    pub schema_version: String,
    pub case_id: Option<String>,
    pub citation: Option<String>,
    pub equation: String,
    pub variable: String,
    pub ramification: u32,
    pub branch: Option<i64>,
    pub parameters: Option<ReportParameters>,
    pub seed: Vec<CoeffEntry>,
    pub coefficients: Vec<CoeffEntry>,
    pub characteristic_values: Vec<CoeffEntry>,
    pub residual_leading_exponent: Option<String>,
    pub support: Vec<(u32, String)>,
    pub reported_support: Option<Vec<(u32, String)>>,
    pub support_note: Option<String>,
    pub hull_vertices: Vec<(u32, String)>,
    pub positive_slopes: Vec<String>,
    pub gevrey_candidates: Vec<String>,
    pub growth: Vec<GrowthEntry>,
}

fn fmt_big(r: &num_rational::BigRational) -> String {
    use num_traits::One;
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

fn fmt_ratio(r: &Rational64) -> String {
    if *r.denom() == 1 {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

fn rat_pair(g: &GaussianRational) -> RatPair {
    RatPair {
        re: fmt_big(g.re()),
        im: fmt_big(g.im()),
    }
}

/// Exponent scaled from the working grid to the reporting grid.
fn scaled_exp(q: RamifiedExponent, scale: Rational64) -> String {
    fmt_ratio(&(q.as_ratio() * scale))
}

pub struct ReportContext<'a> {
    pub case: Option<&'a CorpusCase>,
    pub equation: &'a DiffSum,
    /// Multiplier from working-variable exponents to `z` exponents
    /// (1 for `z`-cases, 1/2 for `t = √z`).
    pub z_scale: Rational64,
    pub ramification: u32,
    pub branch: Option<i64>,
}

pub fn build_report(ctx: &ReportContext, c: &Classification) -> ClassificationReport {
    let scale = ctx.z_scale;
    let coeff_entries = |it: &mut dyn Iterator<Item = (RamifiedExponent, GaussianRational)>| {
        it.map(|(q, v)| CoeffEntry {
            exponent: scaled_exp(q, scale),
            value: rat_pair(&v),
        })
        .collect::<Vec<_>>()
    };
    let seed_entries = coeff_entries(
        &mut c
            .solution
            .seed
            .terms()
            .map(|(q, v)| (*q, v.clone())),
    );
    let coefficient_entries = coeff_entries(
        &mut c
            .solution
            .series
            .terms()
            .map(|(q, v)| (*q, v.clone())),
    );
    let characteristic_entries = coeff_entries(
        &mut c
            .solution
            .characteristic_values
            .iter()
            .map(|(q, v)| (*q, v.clone())),
    );
    let residual = c
        .solution
        .residual_leads
        .last()
        .and_then(|r| r.as_ref().map(|q| scaled_exp(*q, scale)));
    let growth = growth_profile(&c.solution)
        .into_iter()
        .map(|p| GrowthEntry {
            s: -to_f64(p.exponent.as_ratio() * scale),
            log_magnitude: p.log_magnitude,
        })
        .collect();

    ClassificationReport {
        schema_version: SCHEMA_VERSION.to_string(),
        case_id: ctx.case.map(|k| k.id.clone()),
        citation: ctx.case.map(|k| k.citation.to_string()),
        equation: ctx.equation.to_string(),
        variable: ctx.equation.var().symbol().to_string(),
        ramification: ctx.ramification,
        branch: ctx.branch,
        parameters: ctx.case.map(|k| ReportParameters {
            alpha: rat_pair(&k.params.alpha),
            beta: rat_pair(&k.params.beta),
            gamma: rat_pair(&k.params.gamma),
            delta: rat_pair(&k.params.delta),
        }),
        seed: seed_entries,
        coefficients: coefficient_entries,
        characteristic_values: characteristic_entries,
        residual_leading_exponent: residual,
        support: c
            .support
            .iter()
            .map(|p| (p.k, fmt_ratio(&p.j0.as_ratio())))
            .collect(),
        reported_support: ctx.case.map(|k| {
            k.reported_support
                .iter()
                .map(|p| (p.k, fmt_ratio(&p.j0.as_ratio())))
                .collect()
        }),
        support_note: ctx.case.and_then(|k| k.support_note.map(str::to_string)),
        hull_vertices: c
            .polygon
            .vertices()
            .iter()
            .map(|(k, j)| (*k, fmt_ratio(&j.as_ratio())))
            .collect(),
        positive_slopes: c.polygon.positive_slopes().iter().map(fmt_ratio).collect(),
        gevrey_candidates: c.candidates.iter().map(fmt_ratio).collect(),
        growth,
    }
}

fn to_f64(r: Rational64) -> f64 {
    *r.numer() as f64 / *r.denom() as f64
}

/// One `<circle>` per support point, one `<polyline>` per hull edge, dashed
/// `<line>` rays for the two vertical sides.
pub fn polygon_svg(p: &NewtonPolygon) -> String {
    let xs: Vec<i64> = p.points().iter().map(|q| i64::from(q.k)).collect();
    let ys: Vec<Rational64> = p
        .points()
        .iter()
        .map(|q| q.j0.as_ratio())
        .chain(p.vertices().iter().map(|(_, j)| j.as_ratio()))
        .collect();
    let xmax = xs.iter().copied().max().unwrap_or(1).max(1);
    let ymin = ys.iter().copied().min().unwrap_or_else(|| 0.into());
    let ymax = ys.iter().copied().max().unwrap_or_else(|| 0.into()) + Rational64::from_integer(1);
    let unit = 48.0;
    let margin = 42.0;
    let fx = |k: f64| margin + k * unit;
    let fy = |j: f64| margin + (to_f64(ymax) - j) * unit;
    let width = fx(xmax as f64) + margin;
    let height = fy(to_f64(ymin)) + margin;

    let mut svg = String::new();
    svg.push_str(&format!(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"0 0 {width:.0} {height:.0}\" \
         font-family=\"monospace\" font-size=\"12\">\n"
    ));
    // axes through the origin
    svg.push_str(&format!(
        "  <line class=\"axis\" x1=\"{:.1}\" y1=\"{:.1}\" x2=\"{:.1}\" y2=\"{:.1}\" stroke=\"#999\"/>\n",
        fx(-0.3),
        fy(0.0),
        fx(xmax as f64 + 0.5),
        fy(0.0)
    ));
    svg.push_str(&format!(
        "  <line class=\"axis\" x1=\"{:.1}\" y1=\"{:.1}\" x2=\"{:.1}\" y2=\"{:.1}\" stroke=\"#999\"/>\n",
        fx(0.0),
        fy(to_f64(ymin) - 0.4),
        fx(0.0),
        fy(to_f64(ymax) + 0.3)
    ));
    // vertical rays of the boundary
    if let (Some(first), Some(last)) = (p.vertices().first(), p.vertices().last()) {
        for v in [first, last] {
            svg.push_str(&format!(
                "  <line class=\"ray\" x1=\"{:.1}\" y1=\"{:.1}\" x2=\"{:.1}\" y2=\"{:.1}\" \
                 stroke=\"#07a\" stroke-width=\"2\" stroke-dasharray=\"6 4\"/>\n",
                fx(f64::from(v.0)),
                fy(to_f64(v.1.as_ratio())),
                fx(f64::from(v.0)),
                fy(to_f64(ymax) + 0.3),
            ));
        }
    }
    for e in p.edges() {
        svg.push_str(&format!(
            "  <polyline class=\"edge\" points=\"{:.1},{:.1} {:.1},{:.1}\" fill=\"none\" \
             stroke=\"#07a\" stroke-width=\"2\"/>\n",
            fx(f64::from(e.from.0)),
            fy(to_f64(e.from.1.as_ratio())),
            fx(f64::from(e.to.0)),
            fy(to_f64(e.to.1.as_ratio())),
        ));
    }
    for q in p.points() {
        let x = fx(f64::from(q.k));
        let y = fy(to_f64(q.j0.as_ratio()));
        svg.push_str(&format!(
            "  <circle class=\"support\" cx=\"{x:.1}\" cy=\"{y:.1}\" r=\"4\" fill=\"#d33\"/>\n"
        ));
        svg.push_str(&format!(
            "  <text x=\"{:.1}\" y=\"{:.1}\" fill=\"#333\">({},{})</text>\n",
            x + 7.0,
            y - 7.0,
            q.k,
            q.j0
        ));
    }
    let slopes: Vec<String> = p.positive_slopes().iter().map(fmt_ratio).collect();
    svg.push_str(&format!(
        "  <text x=\"{:.1}\" y=\"{:.1}\" fill=\"#333\">positive slopes: {}</text>\n",
        margin,
        height - 12.0,
        if slopes.is_empty() {
            "none".to_string()
        } else {
            slopes.join(", ")
        }
    ));
    svg.push_str("</svg>\n");
    svg
}

/// Text rendering. Support points are `*`, hull vertices that are not support
/// points are `o`, edge lattice crossings are `+`.
pub fn polygon_ascii(p: &NewtonPolygon) -> String {
    let den = p
        .points()
        .iter()
        .map(|q| i64::from(q.j0.den()))
        .chain(p.vertices().iter().map(|(_, j)| i64::from(j.den())))
        .fold(1i64, num_integer::lcm);
    let row_of = |j: Rational64| -> i64 {
        let scaled = j * Rational64::from_integer(den);
        debug_assert!(scaled.is_integer());
        scaled.to_integer()
    };
    let rows: Vec<i64> = p
        .points()
        .iter()
        .map(|q| row_of(q.j0.as_ratio()))
        .chain(p.vertices().iter().map(|(_, j)| row_of(j.as_ratio())))
        .chain(std::iter::once(0))
        .collect();
    let rmin = *rows.iter().min().unwrap();
    let rmax = *rows.iter().max().unwrap() + 1;
    let kmax = p.points().iter().map(|q| q.k).max().unwrap_or(0);
    let ncols = kmax as usize + 1;
    let nrows = (rmax - rmin + 1) as usize;
    let mut grid = vec![vec![' '; ncols]; nrows];
    let cell = |r: i64| (rmax - r) as usize;

    for (k, j) in p.vertices() {
        grid[cell(row_of(j.as_ratio()))][*k as usize] = 'o';
    }
    for e in p.edges() {
        for k in e.from.0..=e.to.0 {
            let j = e.from.1.as_ratio()
                + e.slope * Rational64::from_integer(i64::from(k) - i64::from(e.from.0));
            let scaled = j * Rational64::from_integer(den);
            if scaled.is_integer() {
                let c = &mut grid[cell(scaled.to_integer())][k as usize];
                if *c == ' ' {
                    *c = '+';
                }
            }
        }
    }
    for q in p.points() {
        grid[cell(row_of(q.j0.as_ratio()))][q.k as usize] = '*';
    }

    let mut out = String::new();
    for (idx, row) in grid.iter().enumerate() {
        let r = rmax - idx as i64;
        let label = fmt_ratio(&Rational64::new(r, den));
        out.push_str(&format!("{label:>6} |"));
        for c in row {
            out.push_str(&format!("  {c} "));
        }
        out.push('\n');
    }
    out.push_str("       +");
    out.push_str(&"-".repeat(4 * ncols));
    out.push('\n');
    out.push_str("        ");
    for k in 0..=kmax {
        out.push_str(&format!("{k:^4}"));
    }
    out.push('\n');
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polygon::{polygon, SupportPoint};

    fn sample() -> NewtonPolygon {
        let pts = [
            SupportPoint::new(0, RamifiedExponent::from_int(-1)),
            SupportPoint::new(1, RamifiedExponent::from_int(1)),
            SupportPoint::new(2, RamifiedExponent::from_int(1)),
        ];
        polygon(&pts).unwrap()
    }

    #[test]
    fn svg_marker_and_edge_counts() {
        let p = sample();
        let svg = polygon_svg(&p);
        assert_eq!(svg.matches("<polyline").count(), p.edges().len());
        assert_eq!(svg.matches("<circle").count(), p.points().len());
        assert!(svg.contains("positive slopes: 1"));
    }

    #[test]
    fn renderers_accept_half_grid_supports() {
        let pts = [
            SupportPoint::new(0, RamifiedExponent::new(-1, 2)),
            SupportPoint::new(1, RamifiedExponent::new(1, 2)),
            SupportPoint::new(2, RamifiedExponent::new(3, 2)),
        ];
        let p = polygon(&pts).unwrap();
        let svg = polygon_svg(&p);
        assert_eq!(svg.matches("<circle").count(), 3);
        let art = polygon_ascii(&p);
        assert!(art.contains("-1/2 |"), "{art}");
        assert!(art.contains("1/2 |"), "{art}");
    }

    #[test]
    fn ascii_places_points() {
        let p = sample();
        let art = polygon_ascii(&p);
        let lines: Vec<&str> = art.lines().collect();
        // rows run from j = 2 down to j = -1; '*' for (1,1) sits on the j=1 row
        let row_j1 = lines.iter().find(|l| l.starts_with("     1 |")).unwrap();
        // column k is rendered at offset 10 + 4k
        assert_eq!(row_j1.chars().nth(14), Some('*'));
        let row_jm1 = lines.iter().find(|l| l.starts_with("    -1 |")).unwrap();
        assert!(row_jm1.contains('*'));
    }
}
