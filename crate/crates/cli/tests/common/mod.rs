//! Fixture cases shared by the corpus and acceptance tests.

use std::path::PathBuf;
use std::process::Command;

pub struct Case {
    pub name: &'static str,
    pub args: &'static [&'static str],
    pub exit: i32,
}

pub const CASES: &[Case] = &[
    Case { name: "validate_a1", args: &["validate", "a1.json"], exit: 0 },
    Case { name: "validate_a1_db_y1", args: &["validate", "a1_db_y1.json"], exit: 1 },
    Case { name: "validate_n1", args: &["validate", "n1.json", "--identities"], exit: 0 },
    Case { name: "validate_n1_mutated", args: &["validate", "n1_mutated.json"], exit: 1 },
    Case { name: "validate_n1d", args: &["validate", "n1d.json", "--identities", "--points", "20"], exit: 0 },
    Case { name: "validate_ho1", args: &["validate", "ho1.json", "--identities"], exit: 0 },
    Case { name: "validate_ho1_linfty", args: &["validate", "ho1_linfty.json", "--max-arity", "4"], exit: 0 },
    Case { name: "validate_ho2", args: &["validate", "ho2.json"], exit: 0 },
    Case { name: "validate_sl2q", args: &["validate", "sl2q.json", "--identities", "--seed", "7"], exit: 0 },
    Case { name: "validate_zero", args: &["validate", "zero.json"], exit: 0 },
    Case { name: "mc_ho1_axis", args: &["mc", "ho1.json", "--seed", "q=1,p=1e-5"], exit: 0 },
    Case { name: "mc_ho1_level", args: &["mc", "ho1.json", "--base", "e*=1", "--seed", "q=1,p=1"], exit: 0 },
    Case { name: "mc_ho1_level_newton", args: &["mc", "ho1.json", "--base", "e*=1", "--seed", "q=2,p=1"], exit: 0 },
    Case { name: "mc_zero", args: &["mc", "zero.json", "--seed", "q=3/10,p=-2"], exit: 0 },
    Case { name: "mc_ho1_no_iterations", args: &["mc", "ho1.json", "--seed", "q=1,p=1", "--max-iter", "0"], exit: 1 },
    Case { name: "tangent_a1", args: &["tangent", "a1.json"], exit: 0 },
    Case { name: "tangent_a1_db_y1", args: &["tangent", "a1_db_y1.json"], exit: 1 },
    Case { name: "tangent_ho1_origin", args: &["tangent", "ho1.json"], exit: 0 },
    Case { name: "tangent_ho1_axis", args: &["tangent", "ho1.json", "--point", "q=1"], exit: 0 },
    Case {
        name: "tangent_sl2q_orbit",
        args: &["tangent", "sl2q.json", "--point", "q=1", "--base", "e*=1/2", "--orbit-corrected"],
        exit: 0,
    },
    Case { name: "flow_ho1_gauge", args: &["flow", "ho1.json", "--start", "q=1", "--controls", "e=1@1"], exit: 0 },
    Case { name: "flow_zero_controls", args: &["flow", "ho1.json", "--start", "q=1", "--controls", "e=0@1"], exit: 0 },
    Case {
        name: "flow_n1d_gauge",
        args: &[
            "flow",
            "n1d.json",
            "--start",
            "q=1,p=1,e_eps=-1,f_eps=1,h_eps=1",
            "--controls",
            "e=1,f=-1@0.5;h=1@0.5",
        ],
        exit: 0,
    },
    Case {
        name: "flow_n1_adjoint",
        args: &["flow", "n1.json", "--kind", "adjoint", "--start", "e=1,h=1/2", "--controls", "e=1,f=-1/2@0.5;h=1@0.5"],
        exit: 0,
    },
    Case { name: "from_hamiltonian_ho1", args: &["from-hamiltonian", "ho1.json", "--check"], exit: 0 },
    Case { name: "from_hamiltonian_ho2", args: &["from-hamiltonian", "ho2.json", "--check"], exit: 0 },
    Case { name: "from_hamiltonian_sl2q", args: &["from-hamiltonian", "sl2q.json", "--check"], exit: 0 },
    Case { name: "from_hamiltonian_zero", args: &["from-hamiltonian", "zero.json", "--check"], exit: 0 },
    Case { name: "malformed", args: &["validate", "malformed.json"], exit: 2 },
    Case { name: "mc_parity_error", args: &["mc", "ho1.json", "--seed", "e=1"], exit: 2 },
    Case { name: "tangent_base_not_fixed", args: &["tangent", "sl2q.json", "--point", "q=1", "--base", "e*=1/2"], exit: 2 },
    Case { name: "from_hamiltonian_small_cap", args: &["from-hamiltonian", "sl2q.json", "--check", "--cap", "2"], exit: 2 },
    Case { name: "missing_file", args: &["validate", "no_such_file.json"], exit: 2 },
];

pub fn corpus_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../corpus")
}

/// Runs a case with `--json` and returns (exit code, stdout, stderr).
pub fn run_case(case: &Case) -> (i32, String, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_mcred"))
        .current_dir(corpus_dir())
        .args(case.args)
        .arg("--json")
        .output()
        .expect("binary runs");
    (
        out.status.code().expect("exited normally"),
        String::from_utf8(out.stdout).expect("utf-8"),
        String::from_utf8(out.stderr).expect("utf-8"),
    )
}
