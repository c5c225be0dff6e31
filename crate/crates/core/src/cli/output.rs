//! CSV rendering of sweep rows.

use std::io::Write;

use crate::optics::OpticalCoefficients;
use crate::sweep::SweepRow;

/// Shortest representation that parses back to the same `f64`.
pub fn format_number(x: f64) -> String {
    if x.is_nan() {
        "NaN".to_owned()
    } else if x.is_infinite() {
        if x > 0.0 { "inf" } else { "-inf" }.to_owned()
    } else {
        ryu::Buffer::new().format_finite(x).to_owned()
    }
}

pub fn header(with_oracle: bool, with_error: bool) -> Vec<&'static str> {
    let mut h = vec![
        "omega_ratio",
        "d_nm",
        "theta_deg",
        "eps1",
        "eps2",
        "T",
        "R",
        "A",
    ];
    if with_oracle {
        h.extend(["T_oracle", "R_oracle", "A_oracle"]);
    }
    h.extend(["terms_used", "tail_bound"]);
    if with_error {
        h.push("error");
    }
    h
}

fn push_coefficients(record: &mut Vec<String>, k: Option<&OpticalCoefficients>) {
    match k {
        Some(k) => {
            record.extend([k.transmittance, k.reflectance, k.absorptance].map(format_number))
        }
        None => record.extend(std::iter::repeat_n("NaN".to_owned(), 3)),
    }
}

/// Writes a header and one record per row. `theta_deg` gives the angle column
/// for each row in the units the user supplied. An `error` column is added
/// only when some row failed; it is empty for rows that succeeded.
pub fn write_csv<W: Write>(
    rows: &[SweepRow],
    theta_deg: &[f64],
    with_oracle: bool,
    out: W,
) -> std::io::Result<()> {
    assert_eq!(rows.len(), theta_deg.len(), "one angle per row");
    let with_error = rows.iter().any(|r| r.outcome.is_err());
    let mut writer = csv::WriterBuilder::new()
        .terminator(csv::Terminator::Any(b'\n'))
        .from_writer(out);
    writer.write_record(header(with_oracle, with_error))?;
    for (row, &angle) in rows.iter().zip(theta_deg) {
        let mut record: Vec<String> = [row.omega_ratio, row.d_nm, angle, row.eps1, row.eps2]
            .map(format_number)
            .into();
        let ok = row.outcome.as_ref().ok();
        push_coefficients(&mut record, ok.map(|p| &p.coefficients));
        if with_oracle {
            push_coefficients(&mut record, ok.and_then(|p| p.oracle.as_ref()));
        }
        match ok {
            Some(p) => {
                record.push(p.terms_used.to_string());
                record.push(format_number(p.tail_bound));
            }
            None => record.extend(["NaN".to_owned(), "NaN".to_owned()]),
        }
        if with_error {
            record.push(
                row.outcome
                    .as_ref()
                    .err()
                    .map(ToString::to_string)
                    .unwrap_or_default(),
            );
        }
        writer.write_record(&record)?;
    }
    writer.flush()
}
