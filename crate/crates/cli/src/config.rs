//! Line-oriented experiment configuration.
//!
//! ```text
//! dim 2
//! metric identity          # or `metric rows` followed by dim rows
//! mode classical           # classical | quantum
//! rate paper               # paper | matched
//! hamiltonian
//! 2 1 2 -1                 # grade, ascending indices, coefficient
//! end
//! observable               # repeatable
//! 1 1 1
//! end
//! time 0 6.283185307179586 8
//! hbar 1
//! seed 0
//! ```
//!
//! `dim` must come first. Duplicate blades inside a block are summed.

use std::fmt::{self, Write as _};

use fermion_core::{
    DeformationParameter, Metric, Mode, Multivector, RateConvention, TimeGrid, MAX_DIM,
};

#[derive(Clone, Debug, PartialEq, thiserror::Error)]
#[error("line {line}: {message}")]
pub struct ConfigError {
    pub line: usize,
    pub message: String,
}

fn err<T>(line: usize, message: impl Into<String>) -> Result<T, ConfigError> {
    Err(ConfigError {
        line,
        message: message.into(),
    })
}

#[derive(Clone, Debug, PartialEq)]
pub enum MetricSpec {
    Identity,
    Rows(Metric),
}

#[derive(Clone, Debug, PartialEq)]
pub struct ExperimentConfig {
    pub dim: usize,
    pub metric: MetricSpec,
    pub mode: Mode,
    pub rate: RateConvention,
    pub hamiltonian: Multivector,
    pub observables: Vec<Multivector>,
    pub time: Option<TimeGrid>,
    pub hbar: DeformationParameter,
    pub seed: u64,
}

impl ExperimentConfig {
    pub fn metric(&self) -> Metric {
        match &self.metric {
            MetricSpec::Identity => Metric::identity(self.dim),
            MetricSpec::Rows(m) => m.clone(),
        }
    }

    pub fn parse(text: &str) -> Result<Self, ConfigError> {
        Parser::new(text).run()
    }

    /// Canonical text form; every directive is written explicitly.
    pub fn serialize(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "dim {}", self.dim);
        match &self.metric {
            MetricSpec::Identity => s.push_str("metric identity\n"),
            MetricSpec::Rows(m) => {
                s.push_str("metric rows\n");
                for i in 0..self.dim {
                    let row: Vec<String> = (0..self.dim).map(|j| num(m.gram()[(i, j)])).collect();
                    let _ = writeln!(s, "{}", row.join(" "));
                }
            }
        }
        let mode = match self.mode {
            Mode::Classical => "classical",
            Mode::Quantum => "quantum",
        };
        let rate = match self.rate {
            RateConvention::Quarter => "paper",
            RateConvention::ClassicalMatch => "matched",
        };
        let _ = writeln!(s, "mode {mode}\nrate {rate}");
        write_block(&mut s, "hamiltonian", &self.hamiltonian);
        for obs in &self.observables {
            write_block(&mut s, "observable", obs);
        }
        if let Some(g) = &self.time {
            let _ = writeln!(s, "time {} {} {}", num(g.t0()), num(g.t1()), g.steps());
        }
        let _ = writeln!(s, "hbar {}", num(self.hbar.hbar()));
        let _ = writeln!(s, "seed {}", self.seed);
        s
    }
}

impl fmt::Display for ExperimentConfig {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.serialize())
    }
}

/// Shortest representation that parses back to the same double.
fn num(x: f64) -> String {
    format!("{x:?}")
}

fn write_block(s: &mut String, name: &str, a: &Multivector) {
    let _ = writeln!(s, "{name}");
    for (blade, c) in a.terms() {
        let _ = write!(s, "{}", blade.grade());
        for i in blade.indices() {
            let _ = write!(s, " {i}");
        }
        let _ = writeln!(s, " {}", num(c));
    }
    s.push_str("end\n");
}

struct Parser<'a> {
    lines: Vec<(usize, &'a str)>,
    pos: usize,
}

#[derive(Default)]
struct Seen {
    metric: bool,
    mode: bool,
    rate: bool,
    hamiltonian: bool,
    time: bool,
    hbar: bool,
    seed: bool,
}

fn once(flag: &mut bool, line: usize, name: &str) -> Result<(), ConfigError> {
    if *flag {
        return err(line, format!("duplicate `{name}` directive"));
    }
    *flag = true;
    Ok(())
}

fn parse_f64(line: usize, tok: &str) -> Result<f64, ConfigError> {
    match tok.parse::<f64>() {
        Ok(x) if x.is_finite() => Ok(x),
        _ => err(line, format!("expected a finite number, found `{tok}`")),
    }
}

fn parse_usize(line: usize, tok: &str) -> Result<usize, ConfigError> {
    tok.parse().or_else(|_| {
        err(
            line,
            format!("expected a non-negative integer, found `{tok}`"),
        )
    })
}

fn expect_args(line: usize, name: &str, args: &[&str], n: usize) -> Result<(), ConfigError> {
    if args.len() != n {
        return err(
            line,
            format!("`{name}` takes {n} argument(s), found {}", args.len()),
        );
    }
    Ok(())
}

impl<'a> Parser<'a> {
    fn new(text: &'a str) -> Self {
        let lines = text
            .lines()
            .enumerate()
            .map(|(k, l)| (k + 1, l.split('#').next().unwrap_or("").trim()))
            .filter(|(_, l)| !l.is_empty())
            .collect();
        Parser { lines, pos: 0 }
    }

    fn next(&mut self) -> Option<(usize, &'a str)> {
        let item = self.lines.get(self.pos).copied();
        self.pos += 1;
        item
    }

    fn last_line(&self) -> usize {
        self.lines.last().map_or(0, |(n, _)| *n)
    }

    fn run(mut self) -> Result<ExperimentConfig, ConfigError> {
        let Some((line, first)) = self.next() else {
            return err(0, "empty configuration; expected `dim N`");
        };
        let toks: Vec<&str> = first.split_whitespace().collect();
        if toks[0] != "dim" {
            return err(line, "the first directive must be `dim N`");
        }
        expect_args(line, "dim", &toks[1..], 1)?;
        let dim = parse_usize(line, toks[1])?;
        if dim == 0 || dim > MAX_DIM {
            return err(line, format!("dim must be in 1..={MAX_DIM}"));
        }

        let mut cfg = ExperimentConfig {
            dim,
            metric: MetricSpec::Identity,
            mode: Mode::Classical,
            rate: RateConvention::Quarter,
            hamiltonian: Multivector::zero(dim),
            observables: Vec::new(),
            time: None,
            hbar: DeformationParameter::ONE,
            seed: 0,
        };
        let mut seen = Seen::default();

        while let Some((line, text)) = self.next() {
            let toks: Vec<&str> = text.split_whitespace().collect();
            let (name, args) = (toks[0], &toks[1..]);
            match name {
                "dim" => return err(line, "duplicate `dim` directive"),
                "metric" => {
                    once(&mut seen.metric, line, name)?;
                    expect_args(line, name, args, 1)?;
                    cfg.metric = match args[0] {
                        "identity" => MetricSpec::Identity,
                        "rows" => MetricSpec::Rows(self.metric_rows(line, dim)?),
                        other => {
                            return err(
                                line,
                                format!("unknown metric `{other}`; expected identity or rows"),
                            )
                        }
                    };
                }
                "mode" => {
                    once(&mut seen.mode, line, name)?;
                    expect_args(line, name, args, 1)?;
                    cfg.mode = match args[0] {
                        "classical" => Mode::Classical,
                        "quantum" => Mode::Quantum,
                        other => return err(line, format!("unknown mode `{other}`")),
                    };
                }
                "rate" => {
                    once(&mut seen.rate, line, name)?;
                    expect_args(line, name, args, 1)?;
                    cfg.rate = match args[0] {
                        "paper" => RateConvention::Quarter,
                        "matched" => RateConvention::ClassicalMatch,
                        other => return err(line, format!("unknown rate convention `{other}`")),
                    };
                }
                "hamiltonian" => {
                    once(&mut seen.hamiltonian, line, name)?;
                    expect_args(line, name, args, 0)?;
                    cfg.hamiltonian = self.block(line, dim)?;
                }
                "observable" => {
                    expect_args(line, name, args, 0)?;
                    cfg.observables.push(self.block(line, dim)?);
                }
                "time" => {
                    once(&mut seen.time, line, name)?;
                    expect_args(line, name, args, 3)?;
                    let t0 = parse_f64(line, args[0])?;
                    let t1 = parse_f64(line, args[1])?;
                    let steps = parse_usize(line, args[2])?;
                    match TimeGrid::new(t0, t1, steps) {
                        Ok(g) => cfg.time = Some(g),
                        Err(_) => return err(line, "time grid needs t1 > t0 and steps ≥ 1"),
                    }
                }
                "hbar" => {
                    once(&mut seen.hbar, line, name)?;
                    expect_args(line, name, args, 1)?;
                    let x = parse_f64(line, args[0])?;
                    cfg.hbar = DeformationParameter::new(x)
                        .or_else(|_| err(line, "hbar must be non-negative"))?;
                }
                "seed" => {
                    once(&mut seen.seed, line, name)?;
                    expect_args(line, name, args, 1)?;
                    cfg.seed = args[0]
                        .parse()
                        .or_else(|_| err(line, format!("invalid seed `{}`", args[0])))?;
                }
                "end" => return err(line, "`end` outside a block"),
                other => return err(line, format!("unknown directive `{other}`")),
            }
        }
        Ok(cfg)
    }

    fn metric_rows(&mut self, start: usize, dim: usize) -> Result<Metric, ConfigError> {
        let mut rows = Vec::with_capacity(dim);
        for _ in 0..dim {
            let Some((line, text)) = self.next() else {
                return err(self.last_line(), format!("metric needs {dim} rows"));
            };
            let row = text
                .split_whitespace()
                .map(|t| parse_f64(line, t))
                .collect::<Result<Vec<_>, _>>()?;
            if row.len() != dim {
                return err(
                    line,
                    format!("metric row needs {dim} entries, found {}", row.len()),
                );
            }
            rows.push(row);
        }
        Metric::new(&rows).or_else(|e| err(start, format!("invalid metric: {e}")))
    }

    fn block(&mut self, start: usize, dim: usize) -> Result<Multivector, ConfigError> {
        let mut out = Multivector::zero(dim);
        loop {
            let Some((line, text)) = self.next() else {
                return err(
                    self.last_line(),
                    format!("block opened on line {start} has no `end`"),
                );
            };
            if text == "end" {
                return Ok(out);
            }
            let toks: Vec<&str> = text.split_whitespace().collect();
            let grade = parse_usize(line, toks[0])?;
            if toks.len() != grade + 2 {
                return err(
                    line,
                    format!("a grade-{grade} term needs {grade} indices and a coefficient"),
                );
            }
            let indices = toks[1..=grade]
                .iter()
                .map(|t| parse_usize(line, t))
                .collect::<Result<Vec<_>, _>>()?;
            if indices.iter().any(|&i| i == 0 || i > dim) {
                return err(line, format!("indices must lie in 1..={dim}"));
            }
            if indices.windows(2).any(|w| w[0] >= w[1]) {
                return err(line, "indices must be strictly ascending");
            }
            let c = parse_f64(line, toks[grade + 1])?;
            let term = Multivector::blade(dim, &indices, c)
                .or_else(|e| err(line, format!("invalid term: {e}")))?;
            out = &out + &term;
        }
    }
}
