//! Command-line surface: evaluate hypersums by any route, print factored
//! forms as text/LaTeX/JSON, tabulate coefficient tables, and run the
//! self-check suites.
//!
//! Exit codes: 0 success, 1 mathematical disagreement or failed check,
//! 2 usage error. Results go to stdout, diagnostics to stderr.

use clap::{Parser, Subcommand, ValueEnum};
use num::bigint::BigInt;
use num::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::coefficients::{c_hyper_table, c_table};
use crate::hypersums::{
    hypersum_k0, theorem2_depth, theorem2_eval, theorem2_eval_seeded, theorem3_eval,
    theorem3_factored, FactoredHypersum,
};
use crate::oracles::{hypersum_brute, hypersum_stirling};
use crate::poly::PolyY;
use crate::power_sums::{faulhaber_eval, theorem1_eval};
use crate::rat::{pow2, rat, Rat};
use crate::selfcheck::{run_all, Bounds};

#[derive(Parser)]
#[command(
    name = "hypersum",
    about = "Exact iterated power-sum calculator",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate S_k^(L)(N) exactly by one method or all of them.
    Eval {
        #[arg(long = "L")]
        level: u32,
        #[arg(long = "k")]
        k: u32,
        #[arg(long = "N", allow_hyphen_values = true)]
        n: i64,
        #[arg(long, value_enum, default_value_t = Method::All)]
        method: Method,
        /// Fault injection for harnesses: perturb one coefficient of the
        /// table behind the parity-family route.
        #[arg(long = "corrupt-c1", hide = true)]
        corrupt_c1: bool,
    },
    /// Print the factored closed form of S_k^(L) in y = N(N+L+1).
    Factor {
        #[arg(long = "L")]
        level: u32,
        #[arg(long = "k")]
        k: u32,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Tabulate the coefficient table C_p^(L) as exact fractions.
    Coeffs {
        #[arg(long = "L", default_value_t = 0)]
        level: u32,
        #[arg(long = "p-max")]
        p_max: usize,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Run every invariant suite within the given bounds.
    Selfcheck {
        #[arg(long = "p-max", default_value_t = 10)]
        p_max: usize,
        #[arg(long = "L-max", default_value_t = 6)]
        l_max: u32,
        #[arg(long = "k-max", default_value_t = 10)]
        k_max: u32,
        #[arg(long = "N-max", default_value_t = 15)]
        n_max: u64,
    },
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Method {
    Brute,
    Stirling,
    Faulhaber,
    Theorem1,
    Theorem2,
    Theorem3,
    All,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Latex,
    Json,
}

/// Entry point; returns the process exit code.
pub fn run() -> i32 {
    let cli = Cli::parse();
    match cli.command {
        Command::Eval {
            level,
            k,
            n,
            method,
            corrupt_c1,
        } => cmd_eval(level, k, n, method, corrupt_c1),
        Command::Factor { level, k, format } => cmd_factor(level, k, format),
        Command::Coeffs {
            level,
            p_max,
            format,
        } => cmd_coeffs(level, p_max, format),
        Command::Selfcheck {
            p_max,
            l_max,
            k_max,
            n_max,
        } => cmd_selfcheck(Bounds {
            p_max,
            l_max,
            k_max,
            n_max,
        }),
    }
}

fn fmt_rat(r: &Rat) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

fn cmd_eval(level: u32, k: u32, n: i64, method: Method, corrupt_c1: bool) -> i32 {
    if matches!(method, Method::Faulhaber | Method::Theorem1) && level != 0 {
        eprintln!("usage error: this method is defined for --L 0 only");
        return 2;
    }
    if method == Method::Faulhaber && k == 0 {
        eprintln!("usage error: the Bernoulli-formula method needs --k >= 1");
        return 2;
    }
    if matches!(method, Method::Brute) && n < 0 {
        eprintln!("usage error: brute-force summation needs --N >= 0");
        return 2;
    }
    if corrupt_c1 && (method != Method::All || k == 0) {
        eprintln!("usage error: --corrupt-c1 applies to --method all with k >= 1");
        return 2;
    }

    let theorem2_value = |corrupt: bool| -> Rat {
        if k == 0 {
            return hypersum_k0(level, n);
        }
        if corrupt {
            let depth = theorem2_depth(level, k);
            let base = c_table(depth);
            let idx = if depth >= 1 { 1 } else { 0 };
            let bad = base.with_value(idx, base.value(idx) + rat(1));
            theorem2_eval_seeded(&bad, level, k, n)
        } else {
            theorem2_eval(level, k, n)
        }
    };

    match method {
        Method::Brute => println!("{}", hypersum_brute(level, k, n as u64)),
        Method::Stirling => println!("{}", fmt_rat(&hypersum_stirling(level, k, n))),
        Method::Faulhaber => println!("{}", fmt_rat(&faulhaber_eval(k, n))),
        Method::Theorem1 => println!("{}", fmt_rat(&theorem1_eval(k, n))),
        Method::Theorem2 => println!("{}", fmt_rat(&theorem2_value(false))),
        Method::Theorem3 => println!("{}", fmt_rat(&theorem3_eval(level, k, n))),
        Method::All => {
            let mut results: Vec<(&str, Rat)> = Vec::new();
            if n >= 0 {
                results.push((
                    "brute",
                    Rat::from_integer(hypersum_brute(level, k, n as u64)),
                ));
            }
            results.push(("stirling", hypersum_stirling(level, k, n)));
            results.push(("theorem2", theorem2_value(corrupt_c1)));
            results.push(("theorem3", theorem3_eval(level, k, n)));
            if level == 0 {
                if k >= 1 {
                    results.push(("faulhaber", faulhaber_eval(k, n)));
                }
                results.push(("theorem1", theorem1_eval(k, n)));
            }
            let first = results[0].1.clone();
            if results.iter().all(|(_, v)| *v == first) {
                println!("{}", fmt_rat(&first));
                println!("agreement OK ({} methods)", results.len());
            } else {
                for (name, v) in &results {
                    println!("{name} = {}", fmt_rat(v));
                }
                println!("DISAGREEMENT");
                return 1;
            }
        }
    }
    0
}

/// Serialized factored form. All numbers ride as decimal strings; values
/// like 17! overflow any machine word.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct RatParts {
    pub num: String,
    pub den: String,
}

impl RatParts {
    fn from_rat(r: &Rat) -> Self {
        RatParts {
            num: r.numer().to_string(),
            den: r.denom().to_string(),
        }
    }

    fn to_rat(&self) -> Result<Rat, String> {
        let num: BigInt = self
            .num
            .parse()
            .map_err(|_| format!("bad numerator {:?}", self.num))?;
        let den: BigInt = self
            .den
            .parse()
            .map_err(|_| format!("bad denominator {:?}", self.den))?;
        if den.is_zero() {
            return Err("zero denominator".into());
        }
        Ok(Rat::new(num, den))
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct FactoredFormDocument {
    #[serde(rename = "L")]
    pub level: u32,
    pub k: u32,
    pub method: String,
    pub prefactor: RatParts,
    pub sqrt_exponent: u8,
    pub linear_offsets: Vec<i64>,
    /// Integer coefficients of the primitive core, ascending in y.
    pub core_coeffs: Vec<String>,
    pub core_scale: RatParts,
    pub n: usize,
    pub m: u64,
    #[serde(rename = "A")]
    pub a: u8,
}

impl FactoredFormDocument {
    pub fn from_factored(f: &FactoredHypersum) -> Self {
        FactoredFormDocument {
            level: f.level,
            k: f.k,
            method: "theorem3".into(),
            prefactor: RatParts::from_rat(&f.prefactor),
            sqrt_exponent: f.sqrt_exponent,
            linear_offsets: f.linear_offsets.clone(),
            core_coeffs: f
                .core
                .coeffs()
                .iter()
                .map(|c| c.numer().to_string())
                .collect(),
            core_scale: RatParts::from_rat(&f.core_scale),
            n: f.n,
            m: f.m,
            a: f.sqrt_exponent,
        }
    }

    pub fn to_factored(&self) -> Result<FactoredHypersum, String> {
        let core_coeffs: Result<Vec<Rat>, String> = self
            .core_coeffs
            .iter()
            .map(|s| {
                s.parse::<BigInt>()
                    .map(Rat::from_integer)
                    .map_err(|_| format!("bad core coefficient {s:?}"))
            })
            .collect();
        Ok(FactoredHypersum {
            level: self.level,
            k: self.k,
            prefactor: self.prefactor.to_rat()?,
            sqrt_exponent: self.sqrt_exponent,
            linear_offsets: self.linear_offsets.clone(),
            core: PolyY::new(self.level, core_coeffs?),
            core_scale: self.core_scale.to_rat()?,
            n: self.n,
            m: self.m,
        })
    }
}

/// The display scale that folds the power-of-two prefactor denominator and
/// the core content into the printed core polynomial, so renderings read
/// like `k!/(L+k+1)! * factors * (core)/d`.
fn display_scale(f: &FactoredHypersum) -> Rat {
    pow2(f.sqrt_exponent as i64) * &f.core_scale
        / (pow2(f.k as i64 - 1) * rat(1 + (f.level % 2) as i64))
}

/// Linear factors to print: the offsets, plus the expanded square-root
/// factor `(y + ((L+1)/2)^2)` when the exponent is 2.
fn display_offsets(f: &FactoredHypersum) -> Vec<i64> {
    let mut offs = f.linear_offsets.clone();
    if f.sqrt_exponent == 2 {
        let h = (f.level as i64 + 1) / 2;
        offs.push(h * h);
        offs.sort_unstable();
    }
    offs
}

fn poly_term(coeff: &Rat, exp: usize, star: bool) -> String {
    let mul = if star { "*" } else { "" };
    let var = match exp {
        0 => String::new(),
        1 => format!("{mul}y"),
        _ => format!("{mul}y^{exp}"),
    };
    let c = coeff.numer().to_string();
    if exp == 0 {
        c
    } else if c == "1" {
        var.trim_start_matches('*').to_string()
    } else if c == "-1" {
        format!("-{}", var.trim_start_matches('*'))
    } else {
        format!("{c}{var}")
    }
}

/// Renders an integer polynomial descending in y: `3*y^2+22*y-220`.
fn poly_string(coeffs: &[Rat], star: bool) -> String {
    if coeffs.is_empty() {
        return "0".into();
    }
    let mut out = String::new();
    for (exp, c) in coeffs.iter().enumerate().rev() {
        if c.is_zero() {
            continue;
        }
        let term = poly_term(c, exp, star);
        if out.is_empty() {
            out = term;
        } else if let Some(tail) = term.strip_prefix('-') {
            out = format!("{out}-{tail}");
        } else {
            out = format!("{out}+{term}");
        }
    }
    out
}

/// One-line text rendering of a factored form, factorial-ratio style.
pub fn render_text(f: &FactoredHypersum) -> String {
    let mut parts: Vec<String> = Vec::new();
    parts.push(format!("{}!/{}!", f.k, f.level + f.k + 1));
    if f.sqrt_exponent == 1 {
        let c = (f.level as i64 + 1) * (f.level as i64 + 1);
        parts.push(format!("sqrt(4*y+{c})/2"));
    }
    let factors: Vec<String> = display_offsets(f)
        .iter()
        .map(|o| {
            if *o == 0 {
                "y".to_string()
            } else {
                format!("(y+{o})")
            }
        })
        .collect();
    parts.push(factors.join("*"));

    let scale = display_scale(f);
    if f.core.degree().unwrap_or(0) == 0 {
        let v = scale * f.core.coeff(0);
        if !v.is_one() {
            parts.push(fmt_rat(&v));
        }
    } else {
        let body = format!("({})", poly_string(f.core.coeffs(), true));
        let num = scale.numer();
        let den = scale.denom();
        let mut s = String::new();
        if !num.is_one() {
            s.push_str(&format!("{num}*"));
        }
        s.push_str(&body);
        if !den.is_one() {
            s.push_str(&format!("/{den}"));
        }
        parts.push(s);
    }
    format!("S_{}^({}) = {}", f.k, f.level, parts.join(" * "))
}

/// LaTeX rendering mirroring the published display style.
pub fn render_latex(f: &FactoredHypersum) -> String {
    let mut parts: Vec<String> = Vec::new();
    parts.push(format!("\\frac{{{}!}}{{{}!}}", f.k, f.level + f.k + 1));
    if f.sqrt_exponent == 1 {
        let c = (f.level as i64 + 1) * (f.level as i64 + 1);
        parts.push(format!("\\frac{{\\sqrt{{4y+{c}}}}}{{2}}"));
    }
    let factors: Vec<String> = display_offsets(f)
        .iter()
        .map(|o| {
            if *o == 0 {
                "y".to_string()
            } else {
                format!("(y+{o})")
            }
        })
        .collect();
    parts.push(factors.join(""));

    let scale = display_scale(f);
    if f.core.degree().unwrap_or(0) == 0 {
        let v = scale * f.core.coeff(0);
        if !v.is_one() {
            parts.push(if v.denom().is_one() {
                v.numer().to_string()
            } else {
                format!("\\frac{{{}}}{{{}}}", v.numer(), v.denom())
            });
        }
    } else {
        let body = poly_string(f.core.coeffs(), false);
        let num = scale.numer();
        let den = scale.denom();
        let with_num = if num.is_one() {
            body
        } else {
            format!("{num}\\left({body}\\right)")
        };
        parts.push(if den.is_one() {
            format!("\\left({with_num}\\right)")
        } else {
            format!("\\frac{{{with_num}}}{{{den}}}")
        });
    }
    format!("S_{{{}}}^{{({})}} = {}", f.k, f.level, parts.join(" \\, "))
}

fn cmd_factor(level: u32, k: u32, format: Format) -> i32 {
    if k == 0 {
        eprintln!("usage error: the factored form is defined for --k >= 1");
        return 2;
    }
    let f = theorem3_factored(level, k);
    match format {
        Format::Text => println!("{}", render_text(&f)),
        Format::Latex => println!("{}", render_latex(&f)),
        Format::Json => {
            let doc = FactoredFormDocument::from_factored(&f);
            println!("{}", serde_json::to_string_pretty(&doc).expect("serialize"));
        }
    }
    0
}

#[derive(Serialize)]
struct CoeffsDocument {
    #[serde(rename = "L")]
    level: u32,
    values: Vec<RatParts>,
    #[serde(skip_serializing_if = "Option::is_none")]
    oeis_numerators: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    oeis_denominators: Option<String>,
}

fn cmd_coeffs(level: u32, p_max: usize, format: Format) -> i32 {
    let table = c_hyper_table(level, p_max);
    match format {
        Format::Text => {
            if level == 0 {
                // Numerators/denominators track OEIS A036280/A036281 with
                // alternating signs.
                println!("# L=0 table; see OEIS A036280 (numerators), A036281 (denominators)");
            }
            for v in table.values() {
                println!("{}\t{}", v.numer(), v.denom());
            }
        }
        Format::Latex => {
            let rows: Vec<String> = table
                .values()
                .iter()
                .enumerate()
                .map(|(p, v)| {
                    if v.denom().is_one() {
                        format!("C_{{{p}}} &= {}", v.numer())
                    } else {
                        format!("C_{{{p}}} &= \\frac{{{}}}{{{}}}", v.numer(), v.denom())
                    }
                })
                .collect();
            println!(
                "\\begin{{align*}}\n{}\n\\end{{align*}}",
                rows.join(" \\\\\n")
            );
        }
        Format::Json => {
            let doc = CoeffsDocument {
                level,
                values: table.values().iter().map(RatParts::from_rat).collect(),
                oeis_numerators: (level == 0).then(|| "A036280".into()),
                oeis_denominators: (level == 0).then(|| "A036281".into()),
            };
            println!("{}", serde_json::to_string_pretty(&doc).expect("serialize"));
        }
    }
    0
}

fn cmd_selfcheck(bounds: Bounds) -> i32 {
    let outcomes = run_all(&bounds);
    let mut all_ok = true;
    for o in &outcomes {
        if o.passed() {
            println!("ok   {:<26} ({} cases)", o.name, o.cases);
        } else {
            all_ok = false;
            println!(
                "FAIL {:<26} ({} cases): {}",
                o.name,
                o.cases,
                o.failures.join(", ")
            );
        }
    }
    if all_ok {
        println!("selfcheck: all {} suites passed", outcomes.len());
        0
    } else {
        eprintln!("selfcheck: failures detected");
        1
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::ratio;

    #[test]
    fn document_round_trips_through_json() {
        for (level, k) in [(0u32, 1u32), (3, 6), (10, 6), (5, 7), (2, 9)] {
            let f = theorem3_factored(level, k);
            let doc = FactoredFormDocument::from_factored(&f);
            let text = serde_json::to_string(&doc).unwrap();
            let parsed: FactoredFormDocument = serde_json::from_str(&text).unwrap();
            let back = parsed.to_factored().unwrap();
            for n in 1..=10i64 {
                assert_eq!(back.eval_at(n), f.eval_at(n), "L={level} k={k} N={n}");
            }
        }
    }

    #[test]
    fn document_field_names_are_stable() {
        let f = theorem3_factored(0, 1);
        let doc = FactoredFormDocument::from_factored(&f);
        let v: serde_json::Value =
            serde_json::from_str(&serde_json::to_string(&doc).unwrap()).unwrap();
        for key in [
            "L",
            "k",
            "method",
            "prefactor",
            "sqrt_exponent",
            "linear_offsets",
            "core_coeffs",
            "core_scale",
            "n",
            "m",
            "A",
        ] {
            assert!(v.get(key).is_some(), "missing {key}");
        }
        assert_eq!(v["core_coeffs"][0], "1");
        assert_eq!(v["A"], 0);
        assert_eq!(v["linear_offsets"][0], 0);
        assert_eq!(v["prefactor"]["num"], "1");
        assert_eq!(v["prefactor"]["den"], "2");
    }

    #[test]
    fn text_rendering_matches_the_published_style() {
        let t = render_text(&theorem3_factored(3, 6));
        assert_eq!(t, "S_6^(3) = 6!/10! * y*(y+3)*(y+4) * (y^2-2*y-1)");

        let t = render_text(&theorem3_factored(10, 6));
        assert_eq!(
            t,
            "S_6^(10) = 6!/17! * sqrt(4*y+121)/2 * y*(y+10)*(y+18)*(y+24)*(y+28)*(y+30) * (3*y^2+22*y-220)/3"
        );

        let t = render_text(&theorem3_factored(5, 7));
        assert!(t.contains("(7*y^3+14*y^2-238*y+295)/7"), "{t}");

        let t = render_text(&theorem3_factored(0, 1));
        assert_eq!(t, "S_1^(0) = 1!/2! * y");
    }

    #[test]
    fn latex_rendering_smoke() {
        let t = render_latex(&theorem3_factored(10, 6));
        assert!(t.contains("\\frac{6!}{17!}"), "{t}");
        assert!(t.contains("\\sqrt{4y+121}"), "{t}");
        assert!(t.contains("y(y+10)(y+18)(y+24)(y+28)(y+30)"), "{t}");
        assert!(t.contains("\\frac{3y^2+22y-220}{3}"), "{t}");
        let t = render_latex(&theorem3_factored(3, 6));
        assert!(t.contains("(y+3)(y+4)"), "{t}");
        assert!(!t.contains("sqrt"), "no radical at even exponent: {t}");
    }

    #[test]
    fn display_scale_folds_back_to_the_value() {
        for (level, k) in [(0u32, 5u32), (3, 6), (10, 6), (8, 11), (1, 4)] {
            let f = theorem3_factored(level, k);
            for n in 1..=6i64 {
                let y = rat(n * (n + level as i64 + 1));
                let x = rat(2 * n + level as i64 + 1);
                let fr = Rat::from_integer(crate::rat::factorial(k as u64))
                    / Rat::from_integer(crate::rat::factorial((level + k + 1) as u64));
                let mut display = fr * display_scale(&f) * f.core.eval(&y);
                for o in display_offsets(&f) {
                    display *= &y + rat(o);
                }
                if f.sqrt_exponent == 1 {
                    display = display * &x / rat(2);
                }
                assert_eq!(display, f.eval_at(n), "L={level} k={k} N={n}");
            }
        }
    }

    #[test]
    fn rational_formatting() {
        assert_eq!(fmt_rat(&rat(14)), "14");
        assert_eq!(fmt_rat(&ratio(-1, 6)), "-1/6");
    }
}
