use super::{valid_name, RankedPoset};
use crate::error::PosetError;

/// Parse the line-oriented poset format.
///
/// ```text
/// # comment
/// poset B2
/// s1 > *
/// s2 > *
/// s1_2 > s1
/// s1_2 > s2
/// ```
///
/// `U > L` declares that `U` covers `L`. The minimum `*` is always present.
pub fn parse(text: &str) -> Result<RankedPoset, PosetError> {
    let mut name = None;
    let mut covers = Vec::new();
    let mut seen_data = false;
    for (i, raw) in text.lines().enumerate() {
        let line_no = i + 1;
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        if let Some(rest) = line.strip_prefix("poset") {
            if rest.is_empty() || rest.starts_with(char::is_whitespace) {
                let n = rest.trim();
                if seen_data || name.is_some() {
                    return Err(PosetError::Parse {
                        line: line_no,
                        message: "the 'poset' header must come first".into(),
                    });
                }
                if n.is_empty() || n.split_whitespace().count() != 1 {
                    return Err(PosetError::Parse {
                        line: line_no,
                        message: "expected 'poset NAME'".into(),
                    });
                }
                name = Some(n.to_string());
                continue;
            }
        }
        seen_data = true;
        let Some((u, l)) = line.split_once('>') else {
            return Err(PosetError::Parse {
                line: line_no,
                message: format!("expected 'UPPER > LOWER', got '{line}'"),
            });
        };
        let (u, l) = (u.trim(), l.trim());
        for n in [u, l] {
            if !valid_name(n) {
                return Err(PosetError::Parse {
                    line: line_no,
                    message: format!("invalid element name '{n}'"),
                });
            }
        }
        covers.push((u.to_string(), l.to_string()));
    }
    RankedPoset::from_covers(name, covers)
}
