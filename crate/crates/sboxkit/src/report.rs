//! Full property reports: orchestrates every metric module, attaches bound
//! verdicts and attack-category grouping, and renders text/JSON/CSV.

use serde::{Deserialize, Serialize};

use crate::algebraic::{interpolation_polynomial, FieldSpec};
use crate::bounds::{bounds_for, verdict_with, Verdict, VerdictPolicy, BOUNDED_PROPERTIES};
use crate::sbox::SBox;
use crate::spectral::SsiConvention;
use crate::table5::{fixture_deltas, FixtureDelta};
use crate::{Error, Result};

pub const SCHEMA_VERSION: u32 = 1;

/// Attack-technique category of a metric.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Category {
    Generic,
    Linear,
    Differential,
    Boomerang,
    DifferentialLinear,
    Algebraic,
    SideChannel,
}

impl std::fmt::Display for Category {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s = match self {
            Category::Generic => "generic",
            Category::Linear => "linear",
            Category::Differential => "differential",
            Category::Boomerang => "boomerang",
            Category::DifferentialLinear => "differential_linear",
            Category::Algebraic => "algebraic",
            Category::SideChannel => "side_channel",
        };
        f.write_str(s)
    }
}

/// The supported metric catalogue in presentation order: category blocks
/// first, comparative-table row order within each block.
pub const METRIC_CATALOGUE: [(&str, Category); 25] = [
    ("bijectivity", Category::Generic),
    ("balancedness", Category::Generic),
    ("permutation", Category::Generic),
    ("op", Category::Generic),
    ("fp", Category::Generic),
    ("ofp", Category::Generic),
    ("bic", Category::Generic),
    ("sac", Category::Generic),
    ("ai", Category::Generic),
    ("ssi", Category::Generic),
    ("lap", Category::Linear),
    ("nl", Category::Linear),
    ("lbn", Category::Linear),
    ("ls", Category::Linear),
    ("ci", Category::Linear),
    ("du", Category::Differential),
    ("dbn", Category::Differential),
    ("pc", Category::Differential),
    ("udb", Category::Differential),
    ("bu", Category::Boomerang),
    ("dlu", Category::DifferentialLinear),
    ("ad", Category::Algebraic),
    ("ip", Category::Algebraic),
    ("dpa_snr", Category::SideChannel),
    ("to", Category::SideChannel),
];

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", tag = "kind", content = "value")]
pub enum MetricValue {
    Bool(bool),
    Int(i64),
    Real(f64),
    Text(String),
}

impl MetricValue {
    pub fn as_f64(&self) -> Option<f64> {
        match self {
            MetricValue::Bool(_) | MetricValue::Text(_) => None,
            MetricValue::Int(v) => Some(*v as f64),
            MetricValue::Real(v) => Some(*v),
        }
    }

    fn render(&self) -> String {
        match self {
            MetricValue::Bool(b) => b.to_string(),
            MetricValue::Int(v) => v.to_string(),
            MetricValue::Real(v) => format!("{:.6}", v),
            MetricValue::Text(t) => t.clone(),
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct MetricRecord {
    pub id: String,
    pub category: Category,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub value: Option<MetricValue>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub not_applicable: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub lb: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub ub: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub verdict: Option<Verdict>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub fixture_delta: Option<FixtureDelta>,
}

/// Convention flags pinning every ambiguous definition the report relies
/// on, so identical flags imply identical output.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Conventions {
    /// Walsh table orientation: output masks index rows.
    pub walsh_orientation: String,
    pub ssi_convention: String,
    /// Modulus of GF(2^n) for the interpolation polynomial, as a hex
    /// literal.
    pub field_modulus: String,
    /// Verdict band policy; a toolkit policy, not a published threshold.
    pub verdict_bands: String,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct PropertyReport {
    pub schema_version: u32,
    pub toolkit_version: String,
    pub name: String,
    pub n: u32,
    pub m: u32,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub timestamp: Option<u64>,
    pub conventions: Conventions,
    pub metrics: Vec<MetricRecord>,
}

#[derive(Debug, Clone, Copy)]
pub struct AnalyzeOptions {
    pub ssi_convention: SsiConvention,
    /// None selects the default modulus for the width.
    pub field_modulus: Option<u32>,
    pub timestamp: bool,
    /// Attach fixture-delta notes from the published comparative table.
    pub table5_compare: bool,
    pub verdict_policy: VerdictPolicy,
}

impl Default for AnalyzeOptions {
    fn default() -> AnalyzeOptions {
        AnalyzeOptions {
            ssi_convention: SsiConvention::All,
            field_modulus: None,
            timestamp: false,
            table5_compare: false,
            verdict_policy: VerdictPolicy::default(),
        }
    }
}

fn record_from<T, F>(result: std::result::Result<T, Error>, wrap: F) -> (Option<MetricValue>, Option<String>)
where
    F: FnOnce(T) -> MetricValue,
{
    match result {
        Ok(v) => (Some(wrap(v)), None),
        Err(e) => (None, Some(format!("not applicable ({})", e))),
    }
}

fn compute_metric(s: &SBox, id: &str, opts: &AnalyzeOptions) -> (Option<MetricValue>, Option<String>) {
    match id {
        "bijectivity" => (Some(MetricValue::Bool(s.is_bijective())), None),
        "balancedness" => (Some(MetricValue::Bool(s.is_balanced())), None),
        "permutation" => (Some(MetricValue::Bool(s.is_bijective())), None),
        // the comparative-table "order" is the longest cycle length; the
        // group-theoretic order (lcm of cycles) stays available on SBox.
        "op" => record_from(s.max_cycle_length(), |v| MetricValue::Int(v as i64)),
        "fp" => record_from(s.fixed_points(), |v| MetricValue::Int(v.len() as i64)),
        "ofp" => record_from(s.opposite_fixed_points(), |v| MetricValue::Int(v.len() as i64)),
        "bic" => record_from(crate::avalanche::bic_scalar(s), MetricValue::Real),
        "sac" => (
            Some(MetricValue::Real(crate::avalanche::sac_scalar(s).as_f64())),
            None,
        ),
        "ai" => record_from(crate::spectral::absolute_indicator(s), |v| {
            MetricValue::Int(v as i64)
        }),
        "ssi" => record_from(
            crate::spectral::sum_of_squares_indicator(s, opts.ssi_convention),
            |v| MetricValue::Int(v as i64),
        ),
        "lap" => record_from(crate::linear::linear_approximation_probability(s), |v| {
            MetricValue::Real(v.as_f64())
        }),
        "nl" => record_from(crate::linear::nonlinearity(s), |v| MetricValue::Int(v as i64)),
        "lbn" => record_from(crate::linear::linear_branch_number(s), |v| {
            MetricValue::Int(v as i64)
        }),
        "ls" => record_from(crate::linear::linear_structures(s), |v| {
            MetricValue::Int(v.len() as i64)
        }),
        "ci" => record_from(crate::linear::correlation_immunity_order(s), |v| {
            MetricValue::Int(v as i64)
        }),
        "du" => record_from(crate::differential::differential_uniformity(s), |v| {
            MetricValue::Int(v as i64)
        }),
        "dbn" => record_from(crate::differential::differential_branch_number(s), |v| {
            MetricValue::Int(v as i64)
        }),
        "pc" => record_from(crate::differential::propagation_criteria_order(s), |v| {
            MetricValue::Int(v as i64)
        }),
        "udb" => record_from(crate::differential::undisturbed_bits(s), |v| {
            MetricValue::Int(v.len() as i64)
        }),
        "bu" => record_from(crate::combined::boomerang_uniformity(s), |v| {
            MetricValue::Int(v as i64)
        }),
        // absolute max |DLCT|, matching the catalogue bounds; the fixture
        // table prints the normalized ratio, handled in the compare block
        "dlu" => record_from(crate::combined::differential_linear_uniformity(s), |v| {
            MetricValue::Int(v.abs as i64)
        }),
        "ad" => (
            Some(MetricValue::Int(crate::spectral::algebraic_degree(s) as i64)),
            None,
        ),
        "ip" => {
            let field = match opts.field_modulus {
                Some(modulus) => FieldSpec::new(s.n(), modulus),
                None => FieldSpec::with_default_modulus(s.n()),
            };
            record_from(
                field.and_then(|f| interpolation_polynomial(s, f)),
                |p| {
                    MetricValue::Text(format!(
                        "degree {}, {} terms",
                        p.degree(),
                        p.term_count()
                    ))
                },
            )
        }
        // degenerate maps give an infinite SNR, which JSON cannot carry
        "dpa_snr" => record_from(crate::sca::dpa_snr(s), |v| {
            if v.is_finite() {
                MetricValue::Real(v)
            } else {
                MetricValue::Text("infinite".to_string())
            }
        }),
        "to" => record_from(crate::sca::transparency_order(s), MetricValue::Real),
        _ => (None, Some(format!("not applicable (unknown metric {:?})", id))),
    }
}

/// Computes the selected metrics (None = whole catalogue) with per-metric
/// failure isolation: a precondition failure records a reason instead of
/// aborting the report.
pub fn analyze(s: &SBox, selection: Option<&[String]>, opts: &AnalyzeOptions) -> PropertyReport {
    let name = s.name.clone().unwrap_or_else(|| "anonymous".to_string());
    let deltas: Vec<FixtureDelta> = if opts.table5_compare {
        // the published SSI row follows the per-component-max convention
        // regardless of the convention selected for the report body
        let mut computed: Vec<(&str, f64)> = Vec::new();
        for (id, _) in METRIC_CATALOGUE {
            let value = if id == "ssi" {
                crate::spectral::sum_of_squares_indicator_component_max(s)
                    .ok()
                    .map(|v| v as f64)
            } else if id == "dlu" {
                crate::combined::differential_linear_uniformity(s)
                    .ok()
                    .map(|v| v.normalized.as_f64())
            } else {
                compute_metric(s, id, opts).0.and_then(|v| v.as_f64())
            };
            if let Some(v) = value {
                computed.push((id, v));
            }
        }
        fixture_deltas(&name, &computed)
    } else {
        Vec::new()
    };

    let mut metrics = Vec::with_capacity(METRIC_CATALOGUE.len());
    for (id, category) in METRIC_CATALOGUE {
        if let Some(sel) = selection {
            if !sel.iter().any(|w| w == id) {
                continue;
            }
        }
        let (value, not_applicable) = compute_metric(s, id, opts);
        let bounds = if BOUNDED_PROPERTIES.contains(&id) {
            bounds_for(id, s.n(), s.m()).ok()
        } else {
            None
        };
        let (lb, ub, verdict) = match (&bounds, &value) {
            (Some(entry), Some(v)) => {
                let lb = entry.effective_lb(s.is_balanced());
                let verdict = v
                    .as_f64()
                    .map(|x| verdict_with(x, entry, opts.verdict_policy));
                (Some(lb), Some(entry.ub), verdict)
            }
            (Some(entry), None) => (Some(entry.lb), Some(entry.ub), None),
            _ => (None, None, None),
        };
        let fixture_delta = deltas.iter().find(|d| d.metric == id).cloned();
        metrics.push(MetricRecord {
            id: id.to_string(),
            category,
            value,
            not_applicable,
            lb,
            ub,
            verdict,
            fixture_delta,
        });
    }

    let modulus = opts
        .field_modulus
        .unwrap_or_else(|| crate::algebraic::default_modulus(s.n()));
    PropertyReport {
        schema_version: SCHEMA_VERSION,
        toolkit_version: env!("CARGO_PKG_VERSION").to_string(),
        name,
        n: s.n(),
        m: s.m(),
        timestamp: if opts.timestamp {
            Some(
                std::time::SystemTime::now()
                    .duration_since(std::time::UNIX_EPOCH)
                    .map(|d| d.as_secs())
                    .unwrap_or(0),
            )
        } else {
            None
        },
        conventions: Conventions {
            walsh_orientation: "output-mask-rows".to_string(),
            ssi_convention: match opts.ssi_convention {
                SsiConvention::All => "all".to_string(),
                SsiConvention::Nonzero => "nonzero".to_string(),
            },
            field_modulus: format!("{:#x}", modulus),
            verdict_bands: format!(
                "{}% bands (toolkit policy)",
                (opts.verdict_policy.ideal_fraction * 100.0).round()
            ),
        },
        metrics,
    }
}

impl PropertyReport {
    pub fn metric(&self, id: &str) -> Option<&MetricRecord> {
        self.metrics.iter().find(|m| m.id == id)
    }

    pub fn value_f64(&self, id: &str) -> Option<f64> {
        self.metric(id)?.value.as_ref()?.as_f64()
    }
}

/// Side-by-side comparison: metrics as rows, S-boxes as columns.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ComparisonTable {
    pub columns: Vec<String>,
    pub rows: Vec<ComparisonRow>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ComparisonRow {
    pub metric: String,
    pub cells: Vec<String>,
}

pub fn compare(reports: &[PropertyReport]) -> Result<ComparisonTable> {
    if reports.len() < 2 {
        return Err(Error::TooFewReports(reports.len()));
    }
    let columns = reports.iter().map(|r| r.name.clone()).collect();
    let mut rows = Vec::new();
    for (id, _) in METRIC_CATALOGUE {
        if !reports.iter().any(|r| r.metric(id).is_some()) {
            continue;
        }
        let cells = reports
            .iter()
            .map(|r| match r.metric(id) {
                Some(m) => match (&m.value, &m.not_applicable) {
                    (Some(v), _) => v.render(),
                    (None, Some(reason)) => reason.clone(),
                    (None, None) => "-".to_string(),
                },
                None => "-".to_string(),
            })
            .collect();
        rows.push(ComparisonRow {
            metric: id.to_string(),
            cells,
        });
    }
    Ok(ComparisonTable { columns, rows })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Text,
    Json,
    Csv,
}

impl std::str::FromStr for Format {
    type Err = Error;

    fn from_str(s: &str) -> Result<Format> {
        match s {
            "text" => Ok(Format::Text),
            "json" => Ok(Format::Json),
            "csv" => Ok(Format::Csv),
            other => Err(Error::UnknownFormat(other.to_string())),
        }
    }
}

fn fmt_bound(b: Option<f64>) -> String {
    match b {
        Some(v) if v == v.trunc() && v.abs() < 1e15 => format!("{}", v as i64),
        Some(v) => format!("{:.6}", v),
        None => String::new(),
    }
}

pub fn render(report: &PropertyReport, format: Format) -> Result<String> {
    match format {
        Format::Json => Ok(serde_json::to_string_pretty(report)? + "\n"),
        Format::Csv => {
            let mut out = String::from("metric,value,lb,ub,verdict,category\n");
            for m in &report.metrics {
                let value = m
                    .value
                    .as_ref()
                    .map(|v| v.render())
                    .unwrap_or_else(|| m.not_applicable.clone().unwrap_or_default());
                let verdict = m.verdict.map(|v| v.to_string()).unwrap_or_default();
                let value = if value.contains(',') {
                    format!("{:?}", value)
                } else {
                    value
                };
                out.push_str(&format!(
                    "{},{},{},{},{},{}\n",
                    m.id,
                    value,
                    fmt_bound(m.lb),
                    fmt_bound(m.ub),
                    verdict,
                    m.category
                ));
            }
            Ok(out)
        }
        Format::Text => {
            let mut out = String::new();
            out.push_str(&format!(
                "{} ({}x{} S-box)\n",
                report.name, report.n, report.m
            ));
            out.push_str(&format!(
                "conventions: walsh={}, ssi={}, modulus={}, bands={}\n\n",
                report.conventions.walsh_orientation,
                report.conventions.ssi_convention,
                report.conventions.field_modulus,
                report.conventions.verdict_bands
            ));
            let mut current: Option<Category> = None;
            for m in &report.metrics {
                if current != Some(m.category) {
                    out.push_str(&format!("[{}]\n", m.category));
                    current = Some(m.category);
                }
                let value = m
                    .value
                    .as_ref()
                    .map(|v| v.render())
                    .unwrap_or_else(|| m.not_applicable.clone().unwrap_or_default());
                let mut line = format!("  {:<12} {}", m.id, value);
                if let (Some(lb), Some(ub)) = (m.lb, m.ub) {
                    line.push_str(&format!(
                        "  bounds [{}, {}]",
                        fmt_bound(Some(lb)),
                        fmt_bound(Some(ub))
                    ));
                }
                if let Some(v) = m.verdict {
                    line.push_str(&format!("  {}", v));
                }
                if let Some(d) = &m.fixture_delta {
                    line.push_str(&format!(
                        "  [fixture delta: published {:.6}{}]",
                        d.published,
                        if d.known_discrepancy {
                            ", known discrepancy"
                        } else {
                            ""
                        }
                    ));
                }
                line.push('\n');
                out.push_str(&line);
            }
            Ok(out)
        }
    }
}

pub fn render_comparison(table: &ComparisonTable, format: Format) -> Result<String> {
    match format {
        Format::Json => Ok(serde_json::to_string_pretty(table)? + "\n"),
        Format::Csv => {
            let mut out = String::from("metric,");
            out.push_str(&table.columns.join(","));
            out.push('\n');
            for row in &table.rows {
                out.push_str(&format!("{},{}\n", row.metric, row.cells.join(",")));
            }
            Ok(out)
        }
        Format::Text => {
            let width = 14;
            let mut out = format!("{:<12}", "metric");
            for c in &table.columns {
                out.push_str(&format!(" {:>width$}", c, width = width));
            }
            out.push('\n');
            for row in &table.rows {
                out.push_str(&format!("{:<12}", row.metric));
                for cell in &row.cells {
                    out.push_str(&format!(" {:>width$}", cell, width = width));
                }
                out.push('\n');
            }
            Ok(out)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus::builtin;
    use crate::sbox::SBox;

    #[test]
    fn catalogue_appears_exactly_once() {
        let s = builtin("present").unwrap();
        let report = analyze(&s, None, &AnalyzeOptions::default());
        assert_eq!(report.metrics.len(), METRIC_CATALOGUE.len());
        for (id, _) in METRIC_CATALOGUE {
            let hits = report.metrics.iter().filter(|m| m.id == id).count();
            assert_eq!(hits, 1, "{}", id);
            let m = report.metric(id).unwrap();
            assert!(m.value.is_some() || m.not_applicable.is_some(), "{}", id);
        }
    }

    #[test]
    fn ascon_headline_values() {
        let s = builtin("ascon").unwrap();
        let report = analyze(&s, None, &AnalyzeOptions::default());
        assert_eq!(report.value_f64("nl"), Some(8.0));
        assert_eq!(report.value_f64("du"), Some(8.0));
        assert_eq!(report.value_f64("ad"), Some(2.0));
        assert_eq!(report.value_f64("lbn"), Some(3.0));
        assert_eq!(report.value_f64("dbn"), Some(3.0));
        assert_eq!(report.value_f64("lap"), Some(0.25));
        assert_eq!(report.value_f64("ci"), Some(0.0));
        assert_eq!(report.value_f64("pc"), Some(0.0));
    }

    #[test]
    fn non_bijection_records_reasons() {
        let s = SBox::from_table(vec![0, 0, 1, 2, 3, 3, 2, 1], 2, "lossy").unwrap();
        let report = analyze(&s, None, &AnalyzeOptions::default());
        for id in ["op", "fp", "ofp", "bu"] {
            let m = report.metric(id).unwrap();
            assert!(m.value.is_none(), "{}", id);
            assert!(m.not_applicable.as_deref().unwrap().starts_with("not applicable"));
        }
        assert!(report.metric("nl").unwrap().value.is_some());
    }

    #[test]
    fn identity_closed_forms() {
        let id4 = SBox::from_table((0..16).collect(), 4, "identity").unwrap();
        let report = analyze(&id4, None, &AnalyzeOptions::default());
        assert_eq!(report.value_f64("nl"), Some(0.0));
        assert_eq!(report.value_f64("du"), Some(16.0));
        assert_eq!(report.value_f64("ad"), Some(1.0));
        assert_eq!(report.value_f64("udb"), Some(60.0));
        assert_eq!(report.value_f64("ls"), Some(225.0));
    }

    #[test]
    fn json_round_trip() {
        let s = builtin("gift").unwrap();
        let report = analyze(&s, None, &AnalyzeOptions::default());
        let json = render(&report, Format::Json).unwrap();
        let back: PropertyReport = serde_json::from_str(&json).unwrap();
        assert_eq!(serde_json::to_string(&back).unwrap(), serde_json::to_string(&report).unwrap());
    }

    #[test]
    fn reports_reproducible_without_timestamp() {
        let s = builtin("spongent").unwrap();
        let a = render(&analyze(&s, None, &AnalyzeOptions::default()), Format::Json).unwrap();
        let b = render(&analyze(&s, None, &AnalyzeOptions::default()), Format::Json).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn csv_header_contract() {
        let s = builtin("present").unwrap();
        let report = analyze(&s, None, &AnalyzeOptions::default());
        let csv = render(&report, Format::Csv).unwrap();
        assert!(csv.starts_with("metric,value,lb,ub,verdict,category\n"));
    }

    #[test]
    fn text_uses_six_decimals_for_reals() {
        let s = builtin("ascon").unwrap();
        let report = analyze(&s, None, &AnalyzeOptions::default());
        let text = render(&report, Format::Text).unwrap();
        assert!(text.contains("3.015113"), "{}", text);
        assert!(text.contains("4.258065"), "{}", text);
    }

    #[test]
    fn compare_requires_two_reports() {
        let s = builtin("gift").unwrap();
        let r = analyze(&s, None, &AnalyzeOptions::default());
        assert!(matches!(compare(&[r]), Err(Error::TooFewReports(1))));
    }

    #[test]
    fn compare_du_row() {
        let opts = AnalyzeOptions::default();
        let reports = vec![
            analyze(&builtin("present").unwrap(), None, &opts),
            analyze(&builtin("gift").unwrap(), None, &opts),
        ];
        let table = compare(&reports).unwrap();
        let du = table.rows.iter().find(|r| r.metric == "du").unwrap();
        assert_eq!(du.cells, vec!["4".to_string(), "6".to_string()]);
    }

    #[test]
    fn table5_compare_flags_known_swaps() {
        let s = builtin("gift").unwrap();
        let opts = AnalyzeOptions {
            table5_compare: true,
            ..AnalyzeOptions::default()
        };
        let report = analyze(&s, None, &opts);
        let du = report.metric("du").unwrap();
        let delta = du.fixture_delta.as_ref().unwrap();
        assert_eq!(delta.published, 4.0);
        assert!(delta.known_discrepancy);
        // the matching rows carry no delta
        assert!(report.metric("nl").unwrap().fixture_delta.is_none());
    }

    #[test]
    fn selection_subset() {
        let s = builtin("gift").unwrap();
        let sel = vec!["nl".to_string(), "du".to_string()];
        let report = analyze(&s, Some(&sel), &AnalyzeOptions::default());
        assert_eq!(report.metrics.len(), 2);
    }
}
