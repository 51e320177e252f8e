//! Command-line front end: parses arguments, runs one command, reports an exit code.

use std::cmp::Ordering;
use std::io::Write;

use clap::{Args, Parser, Subcommand, ValueEnum};
use freefield::connes::{connes_rank, connes_rank_stabilization, group_hankel_rank, RankMode};
use freefield::expr::{parse_expression, representation_to_expression};
use freefield::freegroup::Alphabet;
use freefield::identities::identity_corpus;
use freefield::magnus::{lyndon_words, magnus_compare, subword_count};
use freefield::pipeline::{difference, group_coefficient, witness, Config, Normalizer, StarMode};
use freefield::support::{min_supp, SupportQuery, DEFAULT_WORK_LIMIT};
use freefield::wfa::WeightedAutomaton;
use freefield::{Error, Expr, Rational, Representation};
use serde_json::{json, Value};

pub const EXIT_OK: i32 = 0;
pub const EXIT_NEGATIVE: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_BUDGET: i32 = 3;

#[derive(Parser, Debug)]
#[command(name = "freefield", version, about = "Word problem and rational series over the free group")]
pub struct Cli {
    #[command(flatten)]
    pub config: CliConfig,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug, Clone)]
pub struct CliConfig {
    /// Ordered generator names, e.g. `x,y,z`
    #[arg(long, global = true)]
    pub alphabet: Option<String>,
    /// Length bound replacing Jacob's bound in support searches
    #[arg(long, global = true)]
    pub bound: Option<usize>,
    #[arg(long, global = true, default_value_t = DEFAULT_WORK_LIMIT)]
    pub work_limit: usize,
    /// Edge depth D for truncated Connes ranks
    #[arg(long, global = true)]
    pub truncate: Option<usize>,
    /// Print one JSON object instead of text
    #[arg(long, global = true)]
    pub json: bool,
    /// Write the normalized automaton as DOT to this file
    #[arg(long, global = true)]
    pub dot: Option<std::path::PathBuf>,
    /// How stars that are not well-ordered are read
    #[arg(long, global = true, value_enum, default_value_t = StarArg::Field)]
    pub star_mode: StarArg,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum StarArg {
    Field,
    Formal,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Decide whether an expression is zero in the free field
    IsZero { expr: String },
    /// Decide whether two expressions are equal
    Equal { left: String, right: String },
    /// Print a simplification-free expression of the series
    Normalize { expr: String },
    /// Coefficient of a group element
    Coeff { expr: String, word: String },
    /// Magnus-minimal support element
    MinSupp { expr: String },
    /// Compare two group elements in the Magnus ordering
    Compare { left: String, right: String },
    /// Rank of the Connes operator on edges
    ConnesRank { expr: String },
    /// Rank of the group translates
    HankelRank { expr: String },
    /// Lyndon words of a given length over the first N generators
    Lyndon { n: usize, len: usize },
    /// Number of occurrences of a positive word as a subword
    SubwordCount { omega: String, v: String },
    /// Zero-test the built-in identity corpus
    Verify {
        #[arg(long)]
        corpus: bool,
    },
}

struct Out<'a> {
    json: bool,
    command: &'static str,
    out: &'a mut dyn Write,
}

impl Out<'_> {
    fn emit(&mut self, text: &str, fields: Value) {
        if self.json {
            let mut obj = json!({ "schema": "1", "command": self.command });
            if let (Some(o), Value::Object(f)) = (obj.as_object_mut(), fields) {
                o.extend(f);
            }
            let _ = writeln!(self.out, "{obj}");
        } else {
            let _ = writeln!(self.out, "{text}");
        }
    }
}

/// Runs the command line `args` (program name first), writing results to
/// `out` and diagnostics to `err`.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            if code == EXIT_OK {
                let _ = write!(out, "{text}");
            } else {
                let _ = write!(err, "{text}");
            }
            return code;
        }
    };
    match execute(&cli, out, err) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            if e.is_budget() {
                EXIT_BUDGET
            } else {
                EXIT_USAGE
            }
        }
    }
}

fn alphabet(cfg: &CliConfig) -> freefield::Result<Alphabet> {
    match &cfg.alphabet {
        Some(a) => Alphabet::parse(a),
        None => Err(Error::Precondition("--alphabet is required".into())),
    }
}

fn pipeline_config(cfg: &CliConfig) -> Config {
    Config {
        bound: cfg.bound,
        work_limit: cfg.work_limit,
        star_mode: match cfg.star_mode {
            StarArg::Field => StarMode::Field,
            StarArg::Formal => StarMode::Formal,
        },
        ..Config::default()
    }
}

fn command_name(c: &Command) -> &'static str {
    match c {
        Command::IsZero { .. } => "is-zero",
        Command::Equal { .. } => "equal",
        Command::Normalize { .. } => "normalize",
        Command::Coeff { .. } => "coeff",
        Command::MinSupp { .. } => "min-supp",
        Command::Compare { .. } => "compare",
        Command::ConnesRank { .. } => "connes-rank",
        Command::HankelRank { .. } => "hankel-rank",
        Command::Lyndon { .. } => "lyndon",
        Command::SubwordCount { .. } => "subword-count",
        Command::Verify { .. } => "verify",
    }
}

struct Session {
    al: Alphabet,
    norm: Normalizer<Rational>,
}

impl Session {
    fn new(cfg: &CliConfig) -> freefield::Result<Self> {
        let al = alphabet(cfg)?;
        let norm = Normalizer::new(al.size(), pipeline_config(cfg));
        Ok(Session { al, norm })
    }

    fn parse(&self, text: &str) -> freefield::Result<Expr> {
        parse_expression(text, &self.al)
    }

    fn series(&mut self, e: &Expr) -> freefield::Result<Representation> {
        Ok(self.norm.normalize(e)?.series)
    }

    fn flush_warnings(&mut self, err: &mut dyn Write) {
        for w in self.norm.take_warnings() {
            let _ = writeln!(err, "warning: {w}");
        }
    }
}

fn execute(cli: &Cli, out: &mut dyn Write, err: &mut dyn Write) -> freefield::Result<i32> {
    let cfg = &cli.config;
    let mut o = Out { json: cfg.json, command: command_name(&cli.command), out };
    match &cli.command {
        Command::IsZero { expr } | Command::Equal { left: expr, .. } => {
            let mut s = Session::new(cfg)?;
            let e = match &cli.command {
                Command::Equal { right, .. } => difference(&s.parse(expr)?, &s.parse(right)?),
                _ => s.parse(expr)?,
            };
            let series = s.series(&e);
            s.flush_warnings(err);
            let series = series?;
            let equal = matches!(cli.command, Command::Equal { .. });
            let (yes, no) = if equal { ("EQUAL", "NOT EQUAL") } else { ("ZERO", "NONZERO") };
            match witness(&series) {
                None => {
                    o.emit(yes, json!({ "result": yes }));
                    Ok(EXIT_OK)
                }
                Some((g, c)) => {
                    let w = s.al.format_element(&g);
                    o.emit(&format!("{no}\nwitness: {w}\ncoefficient: {c}"), json!({ "result": no, "witness": w, "coefficient": c.to_string() }));
                    Ok(EXIT_NEGATIVE)
                }
            }
        }
        Command::Normalize { expr } => {
            let mut s = Session::new(cfg)?;
            let e = s.parse(expr)?;
            let series = s.series(&e);
            s.flush_warnings(err);
            let series = series?;
            let text = representation_to_expression(&series).display(&s.al);
            let automaton = WeightedAutomaton::from_representation(&series);
            if let Some(path) = &cfg.dot {
                std::fs::write(path, automaton.to_dot(&s.al)).map_err(|e| Error::Precondition(format!("cannot write {}: {e}", path.display())))?;
            }
            let aut: Value = serde_json::from_str(&automaton.to_json(&s.al)).map_err(|e| Error::Json(e.to_string()))?;
            o.emit(&text, json!({ "expression": text, "automaton": aut }));
            Ok(EXIT_OK)
        }
        Command::Coeff { expr, word } => {
            let mut s = Session::new(cfg)?;
            let e = s.parse(expr)?;
            let g = s.al.parse_element(word)?;
            let series = s.series(&e);
            s.flush_warnings(err);
            let c = group_coefficient(&series?, &g);
            o.emit(&c.to_string(), json!({ "element": s.al.format_element(&g), "coefficient": c.to_string() }));
            Ok(EXIT_OK)
        }
        Command::MinSupp { expr } => {
            let mut s = Session::new(cfg)?;
            let e = s.parse(expr)?;
            let series = s.series(&e);
            s.flush_warnings(err);
            let series = series?;
            let q = SupportQuery { rep: &series, bound_override: cfg.bound, work_limit: cfg.work_limit };
            let (g, c) = min_supp(&q)?;
            let w = s.al.format_element(&g);
            o.emit(&format!("{w}\ncoefficient: {c}"), json!({ "element": w, "coefficient": c.to_string() }));
            Ok(EXIT_OK)
        }
        Command::Compare { left, right } => {
            let al = alphabet(cfg)?;
            let a = al.parse_element(left)?;
            let b = al.parse_element(right)?;
            let cmp = magnus_compare(&a, &b)?;
            let word = match cmp.ordering {
                Ordering::Less => "LESS",
                Ordering::Equal => "EQUAL",
                Ordering::Greater => "GREATER",
            };
            let wit = cmp.witness.as_ref().map(|w| al.format_word(w));
            let text = match &wit {
                Some(w) => format!("{word}\nlyndon: {w}\ncounts: {} {}", cmp.count_a, cmp.count_b),
                None => word.to_string(),
            };
            o.emit(&text, json!({ "result": word, "lyndon": wit, "counts": [cmp.count_a.to_string(), cmp.count_b.to_string()] }));
            Ok(EXIT_OK)
        }
        Command::ConnesRank { expr } => {
            let mut s = Session::new(cfg)?;
            let e = s.parse(expr)?;
            let series = s.series(&e);
            s.flush_warnings(err);
            let series = series?;
            match cfg.truncate {
                None => {
                    let r = connes_rank(&series, RankMode::Exact);
                    o.emit(&r.to_string(), json!({ "rank": r, "mode": "exact" }));
                }
                Some(d) => {
                    let window = 2 * d + 2;
                    let (a, b, stable) = connes_rank_stabilization(&series, d, window);
                    o.emit(
                        &format!("{a}\ndepth {}: {b}{}", d + 1, if stable { "" } else { " (not yet stable)" }),
                        json!({ "rank": a, "mode": "truncated", "depth": d, "window": window, "next_rank": b, "stable": stable }),
                    );
                }
            }
            Ok(EXIT_OK)
        }
        Command::HankelRank { expr } => {
            let mut s = Session::new(cfg)?;
            let e = s.parse(expr)?;
            let series = s.series(&e);
            s.flush_warnings(err);
            let r = group_hankel_rank(&series?);
            o.emit(&r.to_string(), json!({ "rank": r }));
            Ok(EXIT_OK)
        }
        Command::Lyndon { n, len } => {
            let al = alphabet(cfg)?;
            if *n > al.size() {
                return Err(Error::Precondition(format!("{n} generators requested, alphabet has {}", al.size())));
            }
            let words: Vec<String> = lyndon_words(*n, *len).iter().filter(|w| w.len() == *len).map(|w| al.format_word(w)).collect();
            o.emit(&words.join("\n"), json!({ "count": words.len(), "words": words }));
            Ok(EXIT_OK)
        }
        Command::SubwordCount { omega, v } => {
            let al = alphabet(cfg)?;
            let g = al.parse_element(omega)?;
            let w = al.parse_word(v)?;
            let c = subword_count(&g, &w)?;
            o.emit(&c.to_string(), json!({ "count": c.to_string() }));
            Ok(EXIT_OK)
        }
        Command::Verify { corpus } => {
            if !corpus {
                return Err(Error::Precondition("verify needs --corpus".into()));
            }
            let mut all = true;
            let mut rows = Vec::new();
            let mut lines = Vec::new();
            for item in identity_corpus::<Rational>()? {
                let mut norm = Normalizer::new(item.alphabet.size(), pipeline_config(cfg));
                let pass = match norm.normalize(&item.expr) {
                    Ok(n) => n.series.is_zero(),
                    Err(e) => {
                        let _ = writeln!(err, "{}: {e}", item.name);
                        false
                    }
                };
                for w in norm.take_warnings() {
                    let _ = writeln!(err, "warning: {}: {w}", item.name);
                }
                all &= pass;
                let tag = if pass { "PASS" } else { "FAIL" };
                lines.push(format!("{tag} {}", item.name));
                rows.push(json!({ "name": item.name, "result": tag }));
            }
            o.emit(&lines.join("\n"), json!({ "items": rows, "all_pass": all }));
            Ok(if all { EXIT_OK } else { EXIT_NEGATIVE })
        }
    }
}
