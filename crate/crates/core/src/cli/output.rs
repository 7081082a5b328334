//! Text output: numbers with nine significant digits, `#` comments, CSV rows.

use std::fmt::Write;

/// Formats `x` with nine significant digits in the style of `%.9g`, but
/// always with a decimal point or exponent so the value reads back as a float.
pub fn num(x: f64) -> String {
    if x == 0.0 {
        return "0.0".into();
    }
    if !x.is_finite() {
        return format!("{x}");
    }
    let sci = format!("{x:.8e}");
    let (mantissa, exp) = sci.split_once('e').expect("scientific format has an exponent");
    let exp: i32 = exp.parse().expect("exponent is an integer");
    if !(-5..9).contains(&exp) {
        return format!("{}e{exp}", trim_zeros(mantissa));
    }
    let decimals = (8 - exp).max(0) as usize;
    trim_zeros(&format!("{x:.decimals$}"))
}

fn trim_zeros(s: &str) -> String {
    if !s.contains('.') {
        return format!("{s}.0");
    }
    let t = s.trim_end_matches('0');
    if t.ends_with('.') {
        format!("{t}0")
    } else {
        t.to_string()
    }
}

pub fn opt_num(x: Option<f64>) -> String {
    x.map(num).unwrap_or_default()
}

/// Accumulates newline-terminated lines.
#[derive(Debug, Default)]
pub struct Document {
    text: String,
}

impl Document {
    pub fn comment(&mut self, line: impl AsRef<str>) -> &mut Self {
        let _ = writeln!(self.text, "# {}", line.as_ref());
        self
    }

    pub fn line(&mut self, line: impl AsRef<str>) -> &mut Self {
        let _ = writeln!(self.text, "{}", line.as_ref());
        self
    }

    pub fn row<I, S>(&mut self, fields: I) -> &mut Self
    where
        I: IntoIterator<Item = S>,
        S: AsRef<str>,
    {
        let joined: Vec<String> = fields.into_iter().map(|f| f.as_ref().to_string()).collect();
        self.line(joined.join(","))
    }

    pub fn key(&mut self, key: &str, value: impl AsRef<str>) -> &mut Self {
        self.line(format!("{key} = {}", value.as_ref()))
    }

    pub fn finish(self) -> String {
        self.text
    }
}

/// TOML basic string.
pub fn quoted(s: &str) -> String {
    format!("{s:?}")
}
