//! Golden files for the command-line interface.
//!
//! Each case is stored as `tests/golden/<name>.txt`: the exit code, then
//! stdout, then stderr. Set `BLESS=1` to rewrite them.

use std::path::PathBuf;

use nbe_kernel::cli::{self, CliOutput};

pub struct Case {
    pub name: &'static str,
    pub args: &'static [&'static str],
    pub stdin: &'static str,
}

const fn case(name: &'static str, args: &'static [&'static str]) -> Case {
    Case { name, args, stdin: "" }
}

pub const CASES: &[Case] = &[
    case("check_text", &["check", "\\f:Ans -> Ans. f yes"]),
    case("check_json", &["check", "--format", "json", "\\f:Ans -> Ans. f yes"]),
    case("normalize_text", &["normalize", "--calculus", "stlc", "(\\x:Ans. x) yes"]),
    case("normalize_json", &["normalize", "--calculus", "stlc", "--format", "json", "(\\x:Ans. x) yes"]),
    case("normalize_open_text", &["normalize", "--ctx", "f : Ans * Ans -> Ans", "f"]),
    case("canonicity_text", &["canonicity", "fst (yes, no)"]),
    case("canonicity_json", &["canonicity", "--format", "json", "fst (yes, no)"]),
    case("consistency_text", &["consistency"]),
    case("consistency_json", &["consistency", "--format", "json"]),
    case("oracle_eq_text", &["oracle-eq", "yes", "no"]),
    case("oracle_eq_json", &["oracle-eq", "--format", "json", "yes", "no"]),
    case("oracle_eq_true_json", &["oracle-eq", "--format", "json", "\\f:Ans -> Ans. f", "\\f:Ans -> Ans. \\x:Ans. f x"]),
    case("enumerate_text", &["enumerate", "--type", "Ans -> Ans", "--max-size", "3"]),
    case("enumerate_json", &["enumerate", "--format", "json", "--type", "Ans * Unit", "--max-size", "3"]),
    case("free_theorem_print_text", &["free-theorem", "--calculus", "sysf", "--type", "forall X. X -> X"]),
    case("free_theorem_print_json", &["free-theorem", "--calculus", "sysf", "--format", "json", "--type", "forall X. (X -> X) -> X -> X"]),
    case(
        "free_theorem_check_text",
        &["free-theorem", "--calculus", "sysf", "--type", "forall X. X -> X", "--rel", "@golden/identity.rel", "/\\X. \\x:X. x"],
    ),
    case(
        "free_theorem_check_json",
        &["free-theorem", "--calculus", "sysf", "--format", "json", "--type", "forall X. (X -> X) -> X -> X", "--rel", "@golden/two.rel", "/\\X. \\f:X -> X. \\x:X. f (f x)"],
    ),
    case("mltt_normalize_text", &["normalize", "--calculus", "mltt", "(\\A. \\x. x : (A : U) -> El A -> El A) ans yes"]),
    case("mltt_check_json", &["check", "--calculus", "mltt", "--format", "json", "--type", "(A : U) -> El A -> El A", "\\A x. x"]),
    case(
        "sysf_normalize_text",
        &["normalize", "--calculus", "sysf", "(/\\X. \\f:X -> X. \\x:X. f (f x)) [forall X. (X -> X) -> X -> X] (\\n:forall X. (X -> X) -> X -> X. /\\X. \\s:X -> X. \\z:X. s (n [X] s z)) (/\\X. \\s:X -> X. \\z:X. z)"],
    ),
    case("sysf_type_error_text", &["check", "--calculus", "sysf", "(/\\X. \\x:X. x) [forall X. X -> X] (/\\X. \\x:X -> X. x)"]),
    case("parse_error_json", &["check", "--format", "json", "\\x:. x"]),
    case("parse_error_text", &["check", "\\x:. x"]),
    case("type_error_json", &["normalize", "--format", "json", "yes yes"]),
    case("fuel_error_json", &["oracle-eq", "--format", "json", "--fuel", "2", "(\\f:Ans -> Ans. f (f yes)) (\\x:Ans. x)", "yes"]),
    case("usage_error_text", &["canonicity", "--calculus", "sysf", "/\\X. \\x:X. x"]),
    Case { name: "stdin_text", args: &["canonicity", "-"], stdin: "snd (yes, no)\n" },
];

fn manifest_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
}

fn golden_path(name: &str) -> PathBuf {
    manifest_dir().join("tests").join("golden").join(format!("{name}.txt"))
}

pub fn run_case(case: &Case) -> CliOutput {
    let tests_dir = manifest_dir().join("tests");
    let args: Vec<String> = std::iter::once("nbe".to_string())
        .chain(case.args.iter().map(|a| match a.strip_prefix('@') {
            Some(rel) => tests_dir.join(rel).to_string_lossy().into_owned(),
            None => a.to_string(),
        }))
        .collect();
    cli::run(args, &mut case.stdin.as_bytes())
}

pub fn render(out: &CliOutput) -> String {
    format!("exit: {}\n--- stdout\n{}--- stderr\n{}", out.code, out.stdout, out.stderr)
}

/// Compare one case with its golden file, or rewrite the file under `BLESS`.
pub fn check_case(case: &Case) -> Result<(), String> {
    let actual = render(&run_case(case));
    let path = golden_path(case.name);
    if std::env::var_os("BLESS").is_some() {
        std::fs::write(&path, &actual).map_err(|e| format!("{}: {e}", path.display()))?;
        return Ok(());
    }
    let expected = std::fs::read_to_string(&path).map_err(|e| format!("{}: {e}", path.display()))?;
    if expected == actual {
        Ok(())
    } else {
        Err(format!("{}: expected\n{expected}\nactual\n{actual}", case.name))
    }
}
