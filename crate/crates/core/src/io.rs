//! Instance text format and result serialization.
//!
//! The instance format is line oriented: the capacity, then the item count,
//! then one integer size per line. `#` starts a comment and blank lines are
//! skipped. A leading `# name: <label>` comment carries the optional
//! instance name, so serializing and reparsing reproduces the instance
//! exactly.
//!
//! For convenience, a first line of `unit` switches to decimal weights: the
//! following sizes are fractions in `(0, 1]` scaled onto capacity 10^9.

use crate::model::{Instance, InstanceError};
use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Denominator used for decimal-weight inputs.
pub const UNIT_CAPACITY: u64 = 1_000_000_000;

/// A parse failure with the 1-based line it occurred on.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("line {line}: {reason}")]
pub struct ParseError {
    pub line: usize,
    pub reason: String,
}

impl ParseError {
    fn new(line: usize, reason: impl Into<String>) -> Self {
        ParseError {
            line,
            reason: reason.into(),
        }
    }
}

/// Parses the instance text format.
pub fn parse_instance(text: &str) -> Result<Instance, ParseError> {
    let mut name: Option<String> = None;
    let mut lines = text.lines().enumerate().filter_map(|(idx, raw)| {
        let line = raw.trim();
        if let Some(comment) = line.strip_prefix('#') {
            if name.is_none() {
                if let Some(label) = comment.trim().strip_prefix("name:") {
                    name = Some(label.trim().to_string());
                }
            }
            return None;
        }
        if line.is_empty() {
            None
        } else {
            Some((idx + 1, line))
        }
    });

    let (cap_line, cap_token) = lines
        .next()
        .ok_or_else(|| ParseError::new(1, "missing capacity line"))?;
    let unit_mode = cap_token == "unit";
    let capacity = if unit_mode {
        UNIT_CAPACITY
    } else {
        cap_token.parse::<u64>().map_err(|_| {
            ParseError::new(cap_line, format!("expected capacity or 'unit', got '{cap_token}'"))
        })?
    };
    if capacity == 0 {
        return Err(ParseError::new(cap_line, "capacity must be at least 1"));
    }

    let (count_line, count_token) = lines
        .next()
        .ok_or_else(|| ParseError::new(cap_line + 1, "missing item count line"))?;
    let count: usize = count_token.parse().map_err(|_| {
        ParseError::new(count_line, format!("expected item count, got '{count_token}'"))
    })?;

    let mut sizes = Vec::with_capacity(count);
    let mut last_line = count_line;
    for _ in 0..count {
        let (line, token) = lines.next().ok_or_else(|| {
            ParseError::new(
                last_line + 1,
                format!("expected {count} sizes but input ended after {}", sizes.len()),
            )
        })?;
        last_line = line;
        let size = if unit_mode {
            parse_unit_weight(token).map_err(|reason| ParseError::new(line, reason))?
        } else {
            token
                .parse::<u64>()
                .map_err(|_| ParseError::new(line, format!("expected integer size, got '{token}'")))?
        };
        if size == 0 {
            return Err(ParseError::new(line, "size must be at least 1"));
        }
        if size > capacity {
            return Err(ParseError::new(
                line,
                format!("size {size} exceeds capacity {capacity}"),
            ));
        }
        sizes.push(size);
    }

    if let Some((line, token)) = lines.next() {
        return Err(ParseError::new(
            line,
            format!("unexpected trailing content '{token}'"),
        ));
    }

    let instance = Instance::new(capacity, sizes).map_err(|err| match err {
        InstanceError::ZeroCapacity => ParseError::new(cap_line, "capacity must be at least 1"),
        InstanceError::SizeOutOfRange { index, size, .. } => ParseError::new(
            count_line + 1 + index,
            format!("size {size} is out of range"),
        ),
    })?;
    Ok(match name {
        Some(name) => instance.with_name(name),
        None => instance,
    })
}

/// Decimal fraction in `(0, 1]` with at most nine fractional digits, scaled
/// onto [`UNIT_CAPACITY`].
fn parse_unit_weight(token: &str) -> Result<u64, String> {
    let (int_part, frac_part) = match token.split_once('.') {
        Some((i, f)) => (i, f),
        None => (token, ""),
    };
    if int_part.is_empty() && frac_part.is_empty() {
        return Err(format!("expected decimal weight, got '{token}'"));
    }
    let int_value: u64 = match int_part {
        "" => 0,
        _ => int_part
            .parse()
            .map_err(|_| format!("expected decimal weight, got '{token}'"))?,
    };
    if int_value > 1 {
        return Err(format!("weight {token} exceeds 1"));
    }
    if frac_part.len() > 9 {
        return Err(format!(
            "weight {token} has more than nine fractional digits"
        ));
    }
    if !frac_part.chars().all(|c| c.is_ascii_digit()) {
        return Err(format!("expected decimal weight, got '{token}'"));
    }
    let mut frac_value: u64 = 0;
    if !frac_part.is_empty() {
        frac_value = frac_part
            .parse::<u64>()
            .map_err(|_| format!("expected decimal weight, got '{token}'"))?;
        frac_value *= 10u64.pow(9 - frac_part.len() as u32);
    }
    let scaled = int_value * UNIT_CAPACITY + frac_value;
    if scaled > UNIT_CAPACITY {
        return Err(format!("weight {token} exceeds 1"));
    }
    Ok(scaled)
}

/// Writes an instance in the text format; [`parse_instance`] inverts it.
pub fn serialize_instance(instance: &Instance) -> String {
    let mut out = String::new();
    if let Some(name) = instance.name() {
        out.push_str(&format!("# name: {name}\n"));
    }
    out.push_str(&format!("{}\n{}\n", instance.capacity(), instance.len()));
    for &size in instance.sizes() {
        out.push_str(&format!("{size}\n"));
    }
    out
}

/// One row of a comparison run.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ResultRecord {
    pub instance: String,
    pub algorithm: String,
    pub seed: Option<u64>,
    pub bins: usize,
    pub lower_bound: usize,
    /// Exact or declared optimum when one is known.
    pub optimum: Option<usize>,
    /// `bins / optimum`; absent without a denominator.
    pub ratio: Option<f64>,
    pub elapsed_ns: u64,
    pub n: usize,
}

/// Output encoding for result records.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ResultFormat {
    Csv,
    Json,
}

/// Renders records with a stable column order.
pub fn write_results(records: &[ResultRecord], format: ResultFormat) -> String {
    match format {
        ResultFormat::Csv => {
            let mut out =
                String::from("instance,algorithm,seed,bins,lower_bound,optimum,ratio,elapsed_ns,n\n");
            for r in records {
                out.push_str(&format!(
                    "{},{},{},{},{},{},{},{},{}\n",
                    csv_field(&r.instance),
                    csv_field(&r.algorithm),
                    r.seed.map(|s| s.to_string()).unwrap_or_default(),
                    r.bins,
                    r.lower_bound,
                    r.optimum.map(|o| o.to_string()).unwrap_or_default(),
                    r.ratio.map(|x| x.to_string()).unwrap_or_default(),
                    r.elapsed_ns,
                    r.n,
                ));
            }
            out
        }
        ResultFormat::Json => {
            serde_json::to_string_pretty(records).expect("records serialize without error")
        }
    }
}

fn csv_field(value: &str) -> String {
    if value.contains([',', '"', '\n']) {
        format!("\"{}\"", value.replace('"', "\"\""))
    } else {
        value.to_string()
    }
}
