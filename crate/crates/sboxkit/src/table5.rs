//! Published comparative fixture values for the finalist S-boxes, used by
//! the opt-in `--table5-compare` report mode. Values are stored exactly as
//! printed in the survey table; several cells are known to disagree with
//! exhaustive computation (the GIFT and PRESENT columns are swapped for a
//! handful of rows, and two cells look like transcription slips), so
//! disagreements are reported as logged deltas, never as errors.

use serde::{Deserialize, Serialize};

/// Published fixture rows per builtin id, as (metric id, printed value).
/// `ssi` is the per-component-maximum convention; `dlu` is the normalized
/// ratio; everything else is the plain number printed.
pub fn published(id: &str) -> Option<&'static [(&'static str, f64)]> {
    let rows: &'static [(&'static str, f64)] = match id {
        "skinny8" => &[
            ("op", 140.0),
            ("fp", 1.0),
            ("ofp", 0.0),
            ("bic", 1.0),
            ("sac", 1.0),
            ("ai", 256.0),
            ("ssi", 4194304.0),
            ("lap", 0.25),
            ("nl", 64.0),
            ("lbn", 2.0),
            ("ls", 601.0),
            ("ci", 0.0),
            ("du", 64.0),
            ("dbn", 2.0),
            ("pc", 0.0),
            ("udb", 258.0),
            ("bu", 16.0),
            ("dlu", 0.5),
            ("ad", 6.0),
            ("dpa_snr", 6.312455),
            ("to", 7.174510),
        ],
        "ascon" => &[
            ("op", 26.0),
            ("fp", 0.0),
            ("ofp", 0.0),
            ("bic", 1.0),
            ("sac", 1.0),
            ("ai", 32.0),
            ("ssi", 8192.0),
            ("lap", 0.25),
            ("nl", 8.0),
            ("lbn", 3.0),
            ("ls", 91.0),
            ("ci", 0.0),
            ("du", 8.0),
            ("dbn", 3.0),
            ("pc", 0.0),
            ("udb", 35.0),
            ("bu", 16.0),
            ("dlu", 0.5),
            ("ad", 2.0),
            ("dpa_snr", 3.015113),
            ("to", 4.258065),
        ],
        "spongent" => &[
            ("op", 13.0),
            ("fp", 0.0),
            ("ofp", 1.0),
            ("bic", 1.0),
            ("sac", 1.0),
            ("ai", 16.0),
            ("ssi", 1024.0),
            ("lap", 0.25),
            ("nl", 4.0),
            ("lbn", 2.0),
            ("ls", 9.0),
            ("ci", 0.0),
            ("du", 4.0),
            ("dbn", 3.0),
            ("pc", 0.0),
            ("udb", 3.0),
            ("bu", 16.0),
            ("dlu", 0.5),
            ("ad", 3.0),
            ("dpa_snr", 2.398501),
            ("to", 3.266667),
        ],
        "gift" => &[
            ("op", 7.0),
            ("fp", 0.0),
            ("ofp", 1.0),
            ("bic", 1.0),
            ("sac", 1.0),
            ("ai", 16.0),
            ("ssi", 1024.0),
            ("lap", 0.25),
            ("nl", 4.0),
            ("lbn", 2.0),
            ("ls", 9.0),
            ("ci", 0.0),
            ("du", 4.0),
            ("dbn", 2.0),
            ("pc", 0.0),
            ("udb", 3.0),
            ("bu", 16.0),
            ("dlu", 0.5),
            ("ad", 3.0),
            ("dpa_snr", 2.128608),
            ("to", 3.533333),
        ],
        "present" => &[
            ("op", 9.0),
            ("fp", 0.0),
            ("ofp", 1.0),
            ("bic", 1.0),
            ("sac", 1.0),
            ("ai", 256.0),
            ("ssi", 1024.0),
            ("lap", 0.25),
            ("nl", 4.0),
            ("lbn", 2.0),
            ("ls", 9.0),
            ("ci", 0.0),
            ("du", 6.0),
            ("dbn", 3.0),
            ("pc", 0.0),
            ("udb", 6.0),
            ("bu", 256.0),
            ("dlu", 0.5),
            ("ad", 3.0),
            ("dpa_snr", 2.398501),
            ("to", 3.466667),
        ],
        _ => return None,
    };
    Some(rows)
}

/// Metrics whose GIFT and PRESENT cells are printed swapped relative to
/// exhaustive computation.
pub const SWAPPED_COLUMN_METRICS: [&str; 5] = ["op", "du", "udb", "dpa_snr", "to"];

/// One disagreement between a computed value and the printed fixture.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct FixtureDelta {
    pub metric: String,
    pub computed: f64,
    pub published: f64,
    /// True when the cell belongs to a known column-swap or transcription
    /// slip; such deltas are expected output, not regressions.
    pub known_discrepancy: bool,
}

const TOLERANCE: f64 = 1e-6;

/// Compares computed (metric, value) pairs against the printed column for
/// `id`. Metrics missing on either side are skipped.
pub fn fixture_deltas(id: &str, computed: &[(&str, f64)]) -> Vec<FixtureDelta> {
    let Some(rows) = published(id) else {
        return Vec::new();
    };
    let mut deltas = Vec::new();
    for &(metric, printed) in rows {
        let Some(&(_, value)) = computed.iter().find(|(c, _)| *c == metric) else {
            continue;
        };
        if (value - printed).abs() > TOLERANCE {
            let swap = (id == "gift" || id == "present")
                && SWAPPED_COLUMN_METRICS.contains(&metric);
            // the printed AI cell for present and the whole BU row carry
            // values from other columns
            let slip = (id == "present" && (metric == "ai" || metric == "bu"))
                || (id == "skinny8" && metric == "bu");
            deltas.push(FixtureDelta {
                metric: metric.to_string(),
                computed: value,
                published: printed,
                known_discrepancy: swap || slip,
            });
        }
    }
    deltas
}
