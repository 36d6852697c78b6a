//! Generator lists from `--gens` or `--file`.

use std::fs;
use std::path::Path;

use asg_core::IntVec;
use num_bigint::BigInt;
use serde::Deserialize;

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct GeneratorFile {
    generators: Vec<IntVec>,
}

/// `"5,3,1; 1,5,2"`: vectors separated by `;`, entries by `,`, whitespace
/// ignored.
pub fn parse_gens(text: &str) -> Result<Vec<IntVec>, String> {
    let compact: String = text.chars().filter(|c| !c.is_whitespace()).collect();
    if compact.is_empty() {
        return Err("no generators given".into());
    }
    compact
        .split(';')
        .enumerate()
        .map(|(i, vector)| {
            if vector.is_empty() {
                return Err(format!("vector {} is empty", i + 1));
            }
            vector
                .split(',')
                .map(|entry| {
                    entry
                        .parse::<BigInt>()
                        .map_err(|_| format!("vector {}: {entry:?} is not an integer", i + 1))
                })
                .collect::<Result<Vec<_>, _>>()
                .map(IntVec)
        })
        .collect()
}

/// `{"generators": [[…], …]}`; entries may be JSON integers or decimal strings.
pub fn read_file(path: &Path) -> Result<Vec<IntVec>, String> {
    let text = fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
    let parsed: GeneratorFile = serde_json::from_str(&text).map_err(|e| format!("{}: {e}", path.display()))?;
    Ok(parsed.generators)
}
