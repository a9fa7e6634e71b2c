//! The ledger of printed identities. Each claim is re-derived from generator
//! recipes and compared with the printed result; the printed side is only
//! ever an expectation.

use super::library::{self, ket, ket_with, teleport_symbols};
use super::{ClaimRecord, Verdict};
use crate::classify::{classify, transition_report};
use crate::gates::{big_lambda_expr, cnot_expr, hadamard_minus_expr, hadamard_plus_expr, lambda_expr, sigma2_expr, Sigma2};
use crate::ket::Ket;
use crate::operator::{OpExpr, OperatorError};
use crate::par::{self, Execution};

#[derive(Debug, Clone)]
pub enum Step {
    /// Apply an operator recipe; `targets[k]` is the recipe's qubit `k`.
    Apply(OpExpr, Vec<usize>),
    Project(String, Vec<usize>),
}

/// What the printed text asserts about the derived state.
#[derive(Debug, Clone)]
pub enum Check {
    State(Ket),
    /// Class label of the derived state.
    Class(String),
    /// SUSY delta from the input to the derived state.
    Susy(String),
    /// Size delta from the input to the derived state.
    Size(String),
    BraneNote(String),
}

#[derive(Debug, Clone)]
pub struct Claim {
    pub id: String,
    pub location: &'static str,
    pub input: Ket,
    pub steps: Vec<Step>,
    pub check: Check,
}

impl Claim {
    fn new(id: impl Into<String>, location: &'static str, input: Ket, steps: Vec<Step>, check: Check) -> Self {
        Claim { id: id.into(), location, input, steps, check }
    }

    /// Runs the derivation on the sparse engine.
    pub fn derive(&self) -> Result<Ket, OperatorError> {
        let mut state = self.input.clone();
        for step in &self.steps {
            state = match step {
                Step::Apply(expr, targets) => expr.eval()?.apply_at(&state, targets)?,
                Step::Project(bits, targets) => state.project(targets, bits)?,
            };
        }
        Ok(state)
    }

    pub fn verify(&self) -> ClaimRecord {
        let id = self.id.clone();
        let loc = self.location.to_string();
        let derived = match self.derive() {
            Ok(k) => k,
            Err(e) => {
                return ClaimRecord::compare_text(id, loc, self.expected_text(), format!("error: {e}"));
            }
        };
        let text = |expected: &String, computed: Result<String, String>| {
            let computed = computed.unwrap_or_else(|e| format!("error: {e}"));
            ClaimRecord::compare_text(id.clone(), loc.clone(), expected.clone(), computed)
        };
        match &self.check {
            Check::State(expected) => ClaimRecord::compare(id, loc, expected.clone(), derived),
            Check::Class(expected) => {
                text(expected, classify(&derived).map(|r| r.class_label()).map_err(|e| e.to_string()))
            }
            Check::Susy(expected) => text(
                expected,
                transition_report(&self.input, &derived).map(|t| t.susy_change).map_err(|e| e.to_string()),
            ),
            Check::Size(expected) => text(
                expected,
                transition_report(&self.input, &derived).map(|t| t.size_change).map_err(|e| e.to_string()),
            ),
            Check::BraneNote(expected) => text(
                expected,
                classify(&derived)
                    .map(|r| r.black_hole.and_then(|b| b.brane_note).unwrap_or("none").to_string())
                    .map_err(|e| e.to_string()),
            ),
        }
    }

    fn expected_text(&self) -> String {
        match &self.check {
            Check::State(k) => k.to_string(),
            Check::Class(t) | Check::Susy(t) | Check::Size(t) | Check::BraneNote(t) => t.clone(),
        }
    }
}

fn basis(bits: &str) -> Ket {
    Ket::from_bits(bits).expect("valid bitstring")
}

fn zero(n: usize) -> Ket {
    Ket::zero(n).expect("valid size")
}

fn apply(expr: OpExpr, targets: &[usize]) -> Vec<Step> {
    vec![Step::Apply(expr, targets.to_vec())]
}

fn lambda(k: usize) -> OpExpr {
    lambda_expr(k).expect("index in 1..=4")
}

fn big_lambda(k: usize) -> OpExpr {
    big_lambda_expr(k).expect("index in 1..=4")
}

fn state_claim(id: impl Into<String>, location: &'static str, input: Ket, expr: OpExpr, targets: &[usize], out: Ket) -> Claim {
    Claim::new(id, location, input, apply(expr, targets), Check::State(out))
}

fn one_mode(claims: &mut Vec<Claim>, name: &str, location: &'static str, expr: &OpExpr, table: [&str; 2]) {
    for (j, out) in table.iter().enumerate() {
        let out = if *out == "0" { zero(1) } else { ket(out) };
        claims.push(state_claim(format!("{name}|{j}>"), location, basis(&j.to_string()), expr.clone(), &[0], out));
    }
}

fn two_mode(claims: &mut Vec<Claim>, name: &str, location: &'static str, expr: &OpExpr, table: [(&str, &str); 4]) {
    for (input, out) in table {
        let out = if out == "0" { zero(2) } else { ket(out) };
        claims.push(state_claim(format!("{name}|{input}>"), location, basis(input), expr.clone(), &[0, 1], out));
    }
}

fn generator_claims(claims: &mut Vec<Claim>) {
    let loc = "Sec.2";
    one_mode(claims, "STAR", loc, &OpExpr::star(), ["-|0>", "|1>"]);
    claims.push(state_claim("STAR(|1>+|0>)", loc, ket("|1> + |0>"), OpExpr::star(), &[0], ket("|1> - |0>")));
    claims.push(state_claim("STAR(|1>-|0>)", loc, ket("|1> - |0>"), OpExpr::star(), &[0], ket("|1> + |0>")));
    one_mode(claims, "RAISE", loc, &OpExpr::raise(), ["|1>", "0"]);
    one_mode(claims, "LOWER", loc, &OpExpr::lower(), ["0", "|0>"]);
}

fn lambda_claims(claims: &mut Vec<Claim>) {
    let loc = "Eqs.(5)-(8)";
    one_mode(claims, "L1", loc, &lambda(1), ["0", "0"]);
    one_mode(claims, "L2", loc, &lambda(2), ["0", "0"]);
    one_mode(claims, "L3", loc, &lambda(3), ["-|1>", "-|0>"]);
    one_mode(claims, "L4", loc, &lambda(4), ["|1>", "|0>"]);

    let loc = "Sec.2";
    for k in [3, 4] {
        let sq = OpExpr::product([lambda(k), lambda(k)]);
        one_mode(claims, &format!("L{k}^2"), loc, &sq, ["|0>", "|1>"]);
    }
    one_mode(claims, "(L4+L3)", loc, &OpExpr::sum([lambda(4), lambda(3)]), ["0", "0"]);

    let symbols = teleport_symbols();
    let gamma = ket_with("(alpha)|0> + (beta)|1>", &symbols);
    claims.push(state_claim(
        "L3(alpha|0>+beta|1>)",
        loc,
        gamma.clone(),
        lambda(3),
        &[0],
        ket_with("-(alpha)|1> - (beta)|0>", &symbols),
    ));
    claims.push(state_claim(
        "L4(alpha|0>+beta|1>)",
        loc,
        gamma,
        lambda(4),
        &[0],
        ket_with("(alpha)|1> + (beta)|0>", &symbols),
    ));

    one_mode(claims, "HPLUS", loc, &hadamard_plus_expr(), ["|0> + |1>", "|1> - |0>"]);
    one_mode(claims, "HMINUS", loc, &hadamard_minus_expr(), ["|0> + |1>", "|0> - |1>"]);
    one_mode(claims, "SIG2A", loc, &sigma2_expr(Sigma2::A), ["-|1>", "|0>"]);
    one_mode(claims, "SIG2B", loc, &sigma2_expr(Sigma2::B), ["|1>", "-|0>"]);
}

fn tensor_claims(claims: &mut Vec<Claim>) {
    let t = |a: OpExpr, b: OpExpr| OpExpr::tensor([a, b]);
    two_mode(
        claims,
        "STARxSTAR",
        "Eq.(9)",
        &t(OpExpr::star(), OpExpr::star()),
        [("00", "|00>"), ("01", "-|01>"), ("10", "-|10>"), ("11", "|11>")],
    );
    two_mode(
        claims,
        "RAISExRAISE",
        "Eq.(10)",
        &t(OpExpr::raise(), OpExpr::raise()),
        [("00", "|11>"), ("01", "0"), ("10", "0"), ("11", "0")],
    );
    two_mode(
        claims,
        "LOWERxLOWER",
        "Eq.(11)",
        &t(OpExpr::lower(), OpExpr::lower()),
        [("00", "0"), ("01", "0"), ("10", "0"), ("11", "|00>")],
    );
    two_mode(
        claims,
        "RAISExLOWER",
        "Sec.2",
        &t(OpExpr::raise(), OpExpr::lower()),
        [("00", "0"), ("01", "|10>"), ("10", "0"), ("11", "0")],
    );
    two_mode(
        claims,
        "LOWERxRAISE",
        "Sec.2",
        &t(OpExpr::lower(), OpExpr::raise()),
        [("00", "0"), ("01", "0"), ("10", "|01>"), ("11", "0")],
    );
}

fn big_lambda_claims(claims: &mut Vec<Claim>) {
    let loc = "Eqs.(12)-(15)";
    let printed: [[(&str, &str); 4]; 4] = [
        [("00", "-|01> - |10>"), ("11", "0"), ("01", "|11>"), ("10", "|11>")],
        [("00", "0"), ("11", "|01> + |10>"), ("01", "-|00>"), ("10", "-|00>")],
        [("00", "-|01>"), ("11", "|01>"), ("01", "0"), ("10", "|11> - |00>")],
        // printed identical to the LL3 list
        [("00", "-|01>"), ("11", "|01>"), ("01", "0"), ("10", "|11> - |00>")],
    ];
    for (k, table) in printed.into_iter().enumerate() {
        two_mode(claims, &format!("LL{}", k + 1), loc, &big_lambda(k + 1), table);
    }
    claims.push(state_claim(
        "LL2LL1|00>",
        "Sec.2",
        basis("00"),
        OpExpr::product([big_lambda(2), big_lambda(1)]),
        &[0, 1],
        ket("2|00>"),
    ));
    claims.push(state_claim(
        "LL1LL2|11>",
        "Sec.2",
        basis("11"),
        OpExpr::product([big_lambda(1), big_lambda(2)]),
        &[0, 1],
        ket("2|11>"),
    ));
}

fn cnot_claims(claims: &mut Vec<Claim>) {
    let rules = [("Eq.(17)", "00", "00"), ("Eq.(18)", "01", "01"), ("Eq.(19)", "10", "11"), ("Eq.(20)", "11", "10")];
    for (loc, input, out) in rules {
        claims.push(state_claim(format!("CNOT|{input}>"), loc, basis(input), cnot_expr(), &[0, 1], basis(out)));
    }
    // |ij> -> |i>|i xor j>, with the sector operator (I⊗λ4)^i
    for (_, input, out) in rules {
        let i = input.starts_with('1');
        let sector = if i { OpExpr::tensor([OpExpr::id(), lambda(4)]) } else { OpExpr::tensor([OpExpr::id(), OpExpr::id()]) };
        claims.push(state_claim(format!("U_CNOT(i)|{input}>"), "Eq.(21)", basis(input), sector, &[0, 1], basis(out)));
    }
    for (_, input, _) in rules {
        claims.push(state_claim(
            format!("CNOT^2|{input}>"),
            "Eq.(21)",
            basis(input),
            OpExpr::product([cnot_expr(), cnot_expr()]),
            &[0, 1],
            basis(input),
        ));
    }
}

fn bell_claims(claims: &mut Vec<Claim>) {
    let b = library::BELL_STATES.map(ket);
    let star_star = OpExpr::tensor([OpExpr::star(), OpExpr::star()]);
    claims.push(state_claim("B1", "Eq.(22)", basis("00"), OpExpr::product([star_star, big_lambda(1)]), &[0, 1], b[0].clone()));
    claims.push(state_claim("B2", "Eq.(23)", b[0].clone(), OpExpr::star(), &[1], b[1].clone()));
    claims.push(state_claim("B3", "Eq.(24)", b[1].clone(), OpExpr::raise(), &[1], b[2].clone()));
    claims.push(state_claim("B4-text", "Eq.(25)", b[2].clone(), OpExpr::star(), &[1], b[3].clone()));
    claims.push(state_claim(
        "B4",
        "Eq.(25)",
        b[2].clone(),
        OpExpr::product([lambda(4), lambda(3)]),
        &[1],
        b[3].clone(),
    ));
}

fn teleport_claims(claims: &mut Vec<Claim>) {
    let symbols = teleport_symbols();
    let k = |t: &str| ket_with(t, &symbols);
    let input = k(library::TELEPORT_INPUT);
    let after_cnot = k(library::TELEPORT_AFTER_CNOT);
    let after_h = k(library::TELEPORT_AFTER_HPLUS);
    let after_not = k(library::TELEPORT_AFTER_NOT);
    let output = k(library::TELEPORT_OUTPUT);

    claims.push(state_claim("T-CNOT", "Eq.(27)", input.clone(), cnot_expr(), &[0, 1], after_cnot.clone()));
    claims.push(state_claim("T-HPLUS", "Eq.(28)", after_cnot, hadamard_plus_expr(), &[0], after_h.clone()));
    claims.push(state_claim("T-NOT", "Eq.(29)", after_h, lambda(4), &[0], after_not.clone()));
    claims.push(Claim::new(
        "T-P00",
        "Sec.2 P(0)",
        after_not,
        vec![Step::Project("00".into(), vec![0, 1])],
        Check::State(output.clone()),
    ));
    claims.push(Claim::new(
        "T-identity",
        "Sec.2 P(0)",
        input,
        vec![
            Step::Apply(cnot_expr(), vec![0, 1]),
            Step::Apply(hadamard_plus_expr(), vec![0]),
            Step::Apply(lambda(4), vec![0]),
            Step::Project("00".into(), vec![0, 1]),
        ],
        Check::State(output),
    ));
}

fn ghz_claims(claims: &mut Vec<Claim>) {
    let loc = "Sec.3 GHZ";
    let input = ket(library::GHZ_INPUT);
    let via = |control: usize| apply(cnot_expr(), &[control, 2]);
    for (name, control) in [("a1", 0), ("a2", 1)] {
        claims.push(Claim::new(
            format!("GHZ({name})"),
            loc,
            input.clone(),
            via(control),
            Check::State(ket(library::GHZ_OUTPUT)),
        ));
    }
    claims.push(Claim::new("GHZ-class", loc, input.clone(), via(1), Check::Class("GHZ".into())));
    claims.push(Claim::new(
        "GHZ-brane",
        loc,
        input.clone(),
        via(1),
        Check::BraneNote(crate::classify::GHZ_BRANE_NOTE.into()),
    ));
    claims.push(Claim::new("GHZ-size", loc, input, via(1), Check::Size("size: small → large (attractor)".into())));
}

fn interchange_claims(claims: &mut Vec<Claim>) {
    let loc = "Sec.3 interchange";
    let start = basis("000");
    let step1 = ket(library::CLASS_CHANGE_STEP1);
    let printed = ket(library::CLASS_CHANGE_PRINTED);
    let both = || {
        vec![Step::Apply(hadamard_plus_expr(), vec![2]), Step::Apply(cnot_expr(), vec![2, 1])]
    };
    claims.push(state_claim("X-step1", loc, start.clone(), hadamard_plus_expr(), &[2], step1.clone()));
    claims.push(state_claim("X-step2", loc, step1, cnot_expr(), &[2, 1], printed.clone()));
    claims.push(Claim::new("X-class", loc, start.clone(), both(), Check::Class("BISEPARABLE(A-BC)".into())));
    claims.push(Claim::new("X-susy", loc, start, both(), Check::Susy("SUSY: 1/2 → 1/4 preserved".into())));
    claims.push(Claim::new("X-printed-class", loc, printed, Vec::new(), Check::Class("BISEPARABLE(A-BC)".into())));
}

/// Every printed identity in ledger order.
pub fn paper_claims() -> Vec<Claim> {
    let mut claims = Vec::new();
    generator_claims(&mut claims);
    lambda_claims(&mut claims);
    tensor_claims(&mut claims);
    big_lambda_claims(&mut claims);
    cnot_claims(&mut claims);
    bell_claims(&mut claims);
    teleport_claims(&mut claims);
    ghz_claims(&mut claims);
    interchange_claims(&mut claims);
    claims
}

pub fn verify_claims() -> Vec<ClaimRecord> {
    verify_claims_with(Execution::default())
}

/// Verifies the ledger, fanning out per claim; output order is ledger order.
pub fn verify_claims_with(exec: Execution) -> Vec<ClaimRecord> {
    par::map_collect(&paper_claims(), exec, Claim::verify)
}

/// Counts of `(MATCH, MATCH_UP_TO_SCALAR, MISMATCH)`.
pub fn tally(records: &[ClaimRecord]) -> (usize, usize, usize) {
    records.iter().fold((0, 0, 0), |(m, s, x), r| match r.verdict {
        Verdict::Match => (m + 1, s, x),
        Verdict::MatchUpToScalar(_) => (m, s + 1, x),
        Verdict::Mismatch => (m, s, x + 1),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::BTreeSet;

    fn ledger() -> Vec<ClaimRecord> {
        verify_claims_with(Execution::Sequential)
    }

    #[test]
    fn ids_are_unique() {
        let claims = paper_claims();
        let ids: BTreeSet<_> = claims.iter().map(|c| c.id.as_str()).collect();
        assert_eq!(ids.len(), claims.len());
    }

    #[test]
    fn known_discrepancies_only() {
        let bad: Vec<String> = ledger().iter().filter(|r| r.verdict != Verdict::Match).map(|r| r.id.clone()).collect();
        assert_eq!(
            bad,
            ["LL4|00>", "LL4|11>", "LL4|01>", "LL4|10>", "B3", "B4-text", "B4", "X-step2"]
        );
    }

    #[test]
    fn ledger_lines() {
        let lines: Vec<String> = ledger().iter().map(ClaimRecord::ledger_line).collect();
        assert!(lines.contains(&"Eq.(22) B1: MATCH".to_string()));
        assert!(lines.contains(&"Eq.(24) B3: MISMATCH (computed -|11>)".to_string()));
        assert!(lines.contains(&"Eq.(25) B4-text: MATCH_UP_TO_SCALAR(-1)".to_string()));
    }

    #[test]
    fn parallel_matches_sequential() {
        assert_eq!(verify_claims_with(Execution::Parallel), ledger());
    }
}
