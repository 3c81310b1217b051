//! The canonical shruti table and its CSV/JSON exports.
//!
//! The table stores exactly the printed rows: 21 entries including both
//! Chandovati endpoints, even though the surrounding text counts 22
//! micro-tones. Names are normalized to ASCII.

use std::sync::LazyLock;

use serde::Serialize;

use crate::pitch::{deviation_cents, just_frequency, Hz, Ratio};
use crate::swara::{key_frequency, key_index, key_name, Swara};

/// One row of the canonical table.
#[derive(Clone, Copy, Debug)]
pub struct ShrutiEntry {
    pub name: &'static str,
    pub ratio: Ratio,
    /// Swara printed on this row, if any; the octave row repeats sa.
    pub swara_label: Option<Swara>,
}

/// ETS semitone paired with each row, on rows where the table prints a
/// Western note. The pairing follows the printed layout and asserts no
/// theoretical equivalence.
const WESTERN_STEPS: [Option<u8>; 21] = [
    Some(0),  // C
    Some(1),  // C#
    None,
    None,
    Some(2),  // D
    Some(3),  // D#
    None,
    Some(4),  // E
    Some(5),  // F
    Some(6),  // F#
    None,
    Some(7),  // G
    Some(8),  // G#
    None,
    Some(9),  // A
    None,
    Some(10), // A#
    None,
    Some(11), // B
    None,
    Some(12), // C, octave
];

static CANONICAL: LazyLock<[ShrutiEntry; 21]> = LazyLock::new(|| {
    let entry = |name, num, den, swara_label| ShrutiEntry {
        name,
        ratio: Ratio::new(num, den).expect("canonical ratios are valid"),
        swara_label,
    };
    [
        entry("Chandovati", 1, 1, Some(Swara::SA)),
        entry("Dayavati", 256, 243, None),
        entry("Ranjani", 16, 15, None),
        entry("Ratika", 10, 9, None),
        entry("Raudri", 9, 8, Some(Swara::RE)),
        entry("Krodha", 32, 27, None),
        entry("Vajrika", 6, 5, None),
        entry("Prasarini", 5, 4, Some(Swara::GA)),
        entry("Marjani", 4, 3, Some(Swara::MA)),
        entry("Rakta", 45, 32, None),
        entry("Sandipani", 729, 512, None),
        entry("Alapini", 3, 2, Some(Swara::PA)),
        entry("Madanti", 128, 81, None),
        entry("Rohini", 8, 5, None),
        entry("Ramya", 5, 3, Some(Swara::DHA)),
        entry("Ugra", 27, 16, None),
        entry("Ksobhini", 16, 9, None),
        entry("Tivra", 9, 5, None),
        entry("Kumudvati", 15, 8, Some(Swara::NI)),
        entry("Manda", 243, 128, None),
        entry("Chandovati", 2, 1, Some(Swara::SA)),
    ]
});

pub fn canonical_shrutis() -> &'static [ShrutiEntry; 21] {
    &CANONICAL
}

/// The canonical entries with just intonation applied at `base`.
pub fn shruti_table(base: Hz) -> Vec<(ShrutiEntry, Hz)> {
    canonical_shrutis()
        .iter()
        .map(|&e| (e, just_frequency(base, e.ratio)))
        .collect()
}

/// Flat export row; field order matches the CSV header.
#[derive(Serialize, Clone, Debug)]
pub struct ShrutiRow {
    pub name: String,
    pub ratio: String,
    pub num: u64,
    pub den: u64,
    pub just_hz: f64,
    pub western_note: Option<String>,
    pub ets_hz: Option<f64>,
    pub deviation_cents: Option<f64>,
}

pub const CSV_HEADER: &str = "name,ratio,num,den,just_hz,western_note,ets_hz,deviation_cents";

/// Export rows at `base`. Western note names and ETS frequencies are
/// filled only when the base itself sits on the A440 keyboard within one
/// cent; the step deviation is base-independent and always present on
/// paired rows.
pub fn table_rows(base: Hz) -> Vec<ShrutiRow> {
    let base_key = key_index(base);
    canonical_shrutis()
        .iter()
        .zip(WESTERN_STEPS)
        .map(|(&e, step)| {
            let name = match e.swara_label {
                None => e.name.to_string(),
                Some(s) => {
                    let mark = if e.ratio == Ratio::OCTAVE { "'" } else { "" };
                    format!("{} ({}{})", e.name, s, mark)
                }
            };
            let (western_note, ets_hz) = match (step, base_key) {
                (Some(st), Some(bk)) => {
                    let key = bk + i64::from(st);
                    (
                        Some(key_name(key)),
                        Some(round4(key_frequency(key).get())),
                    )
                }
                _ => (None, None),
            };
            ShrutiRow {
                name,
                ratio: e.ratio.to_string(),
                num: e.ratio.num(),
                den: e.ratio.den(),
                just_hz: round4(just_frequency(base, e.ratio).get()),
                western_note,
                ets_hz,
                deviation_cents: step.map(|st| round4(deviation_cents(e.ratio, i32::from(st)).0)),
            }
        })
        .collect()
}

pub fn rows_to_csv(rows: &[ShrutiRow]) -> String {
    let mut out = String::from(CSV_HEADER);
    out.push('\n');
    for r in rows {
        let opt4 = |v: Option<f64>| v.map(|v| format!("{v:.4}")).unwrap_or_default();
        out.push_str(&format!(
            "{},{},{},{},{:.4},{},{},{}\n",
            r.name,
            r.ratio,
            r.num,
            r.den,
            r.just_hz,
            r.western_note.clone().unwrap_or_default(),
            opt4(r.ets_hz),
            opt4(r.deviation_cents),
        ));
    }
    out
}

pub fn rows_to_json(rows: &[ShrutiRow]) -> String {
    serde_json::to_string_pretty(rows).expect("rows are plain data")
}

fn round4(v: f64) -> f64 {
    (v * 1e4).round() / 1e4
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn canonical_table_shape() {
        let table = canonical_shrutis();
        assert_eq!(table.len(), 21);
        assert_eq!(table[0].name, "Chandovati");
        assert_eq!(table[0].ratio, Ratio::ONE);
        assert_eq!(table[20].name, "Chandovati");
        assert_eq!(table[20].ratio, Ratio::OCTAVE);
        assert!(
            table.windows(2).all(|w| w[0].ratio < w[1].ratio),
            "strictly increasing"
        );
        assert!(table
            .iter()
            .all(|e| Ratio::ONE <= e.ratio && e.ratio <= Ratio::OCTAVE));
        // the labeled rows are the just major ladder, sa repeated on top
        let labels: Vec<Swara> = table.iter().filter_map(|e| e.swara_label).collect();
        assert_eq!(
            labels,
            vec![
                Swara::SA,
                Swara::RE,
                Swara::GA,
                Swara::MA,
                Swara::PA,
                Swara::DHA,
                Swara::NI,
                Swara::SA,
            ]
        );
    }

    #[test]
    fn printed_spot_frequencies() {
        let base = Hz::new(261.6256).unwrap();
        let table = shruti_table(base);
        let hz_of = |name: &str| table.iter().find(|(e, _)| e.name == name).unwrap().1;
        assert!((hz_of("Kumudvati").get() - 490.5479).abs() < 0.0005);
        assert!((hz_of("Sandipani").get() - 372.5098).abs() < 0.0005);
        assert!((hz_of("Raudri").get() - 294.3288).abs() < 0.0005);
    }

    #[test]
    fn doubling_the_base_doubles_every_row_exactly() {
        let base = Hz::new(261.6256).unwrap();
        let doubled = Hz::new(2.0 * base.get()).unwrap();
        for ((_, lo), (_, hi)) in shruti_table(base).iter().zip(shruti_table(doubled)) {
            assert_eq!(hi.get(), 2.0 * lo.get());
        }
    }

    #[test]
    fn labeled_rows_sit_close_to_their_tempered_steps() {
        // the "rather small" deviation claim, in testable form
        let rows = table_rows(Hz::new(261.6256).unwrap());
        let labeled: Vec<&ShrutiRow> = rows.iter().filter(|r| r.name.contains('(')).collect();
        assert_eq!(labeled.len(), 8);
        for row in labeled {
            let dev = row.deviation_cents.expect("labeled rows are paired");
            assert!(dev.abs() < 22.0, "{}: {dev}", row.name);
        }
    }

    #[test]
    fn csv_export_matches_printed_rows() {
        let rows = table_rows(Hz::new(261.6256).unwrap());
        let csv = rows_to_csv(&rows);
        let lines: Vec<&str> = csv.lines().collect();
        assert_eq!(lines.len(), 22);
        assert_eq!(lines[0], CSV_HEADER);
        assert_eq!(lines[5], "Raudri (re),9/8,9,8,294.3288,D4,293.6648,3.9100");
        assert_eq!(lines[12], "Alapini (pa),3/2,3,2,392.4384,G4,391.9954,1.9550");
        // unpaired rows leave the Western columns empty
        assert_eq!(lines[3], "Ranjani,16/15,16,15,279.0673,,,");
        assert_eq!(lines[21], "Chandovati (sa'),2/1,2,1,523.2512,C5,523.2511,0.0000");
    }

    #[test]
    fn json_export_is_strict_and_complete() {
        let rows = table_rows(Hz::new(261.6256).unwrap());
        let parsed: serde_json::Value = serde_json::from_str(&rows_to_json(&rows)).unwrap();
        let arr = parsed.as_array().unwrap();
        assert_eq!(arr.len(), 21);
        assert_eq!(arr[0]["name"], "Chandovati (sa)");
        assert_eq!(arr[0]["just_hz"], 261.6256);
        assert_eq!(arr[4]["western_note"], "D4");
        assert!(arr[2]["western_note"].is_null());
        assert!(arr[2]["ets_hz"].is_null());
        assert_eq!(arr[0].as_object().unwrap().len(), 8);
    }

    #[test]
    fn off_lattice_base_leaves_western_columns_empty() {
        let rows = table_rows(Hz::new(300.0).unwrap());
        assert!(rows
            .iter()
            .all(|r| r.western_note.is_none() && r.ets_hz.is_none()));
        // step deviation is a property of the ratio, not the base
        assert_eq!(rows[0].deviation_cents, Some(0.0));
        assert!(rows[4].deviation_cents.is_some());
    }
}
