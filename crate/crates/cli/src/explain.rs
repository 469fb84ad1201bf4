use std::fmt::Write;

use lmcrt::quotients::LiftProfile;
use lmcrt::reduction::LinearCongruence;
use lmcrt::VerificationReport;

fn profile(s: &mut String, name: &str, power: &str, digit: &str, p: &LiftProfile) {
    let rows = [
        (format!("{name}^(q-1) mod pq = {power}"), p.power.value()),
        ("carry into p^2q^2".to_string(), p.carry.value()),
        (format!("quotient q({name})"), p.lerch.value()),
        (
            format!("{digit} = carry - {power} q({name})"),
            p.digit.value(),
        ),
        (format!("{digit} without carry"), p.digit_literal.value()),
    ];
    let _ = writeln!(s, "base {name} = {}", p.base);
    for (label, value) in rows {
        let _ = writeln!(s, "  {label:<30} {value}");
    }
}

fn congruence(s: &mut String, label: &str, c: &LinearCongruence) {
    let _ = writeln!(
        s,
        "  {label:<7} {} beta + {} n = {} (mod {})",
        c.u, c.v, c.w, c.m
    );
}

fn mark(ok: bool) -> &'static str {
    if ok {
        "ok"
    } else {
        "FAILS"
    }
}

pub fn render(r: &VerificationReport) -> String {
    let params = &r.instance.params;
    let mut s = String::new();
    let _ = writeln!(s, "p = {}, q = {}", params.p(), params.q());
    let _ = writeln!(
        s,
        "pq = {}, p^2q^2 = {}, p^3q^3 = {}, exponent pq(q-1) = {}",
        params.m1(),
        params.m2(),
        params.m3(),
        params.exponent()
    );
    let _ = writeln!(s, "index n = {}", r.n);
    let _ = writeln!(s);
    profile(&mut s, "a0", "A", "a1", &r.profile_a);
    profile(&mut s, "b0", "B", "b1", &r.profile_b);
    let _ = writeln!(s);
    let _ = writeln!(s, "carry beta of a0^(n(q-1)) over B = {}", r.beta.value());
    let _ = writeln!(s, "c = -B q(a0) mod pq           = {}", r.c.value());
    let _ = writeln!(
        s,
        "c via (B/A) a1                = {}",
        r.c_ratio_form.value()
    );
    let _ = writeln!(s, "d = b1                        = {}", r.d.value());
    let _ = writeln!(s, "system");
    congruence(&mut s, "master", &r.system.master);
    for part in &r.system.parts {
        congruence(&mut s, "part", part);
    }
    let _ = writeln!(s);
    let _ = writeln!(
        s,
        "n mod q from the order-q subgroup = {}",
        r.n_mod_q.value()
    );
    let _ = writeln!(
        s,
        "solved n mod p-1                  = {}",
        r.solved_n.value()
    );
    let _ = writeln!(s);
    let c = &r.checks;
    let rows = [
        ("a0^n = b0 (mod p) lifts to pq", c.lemma1),
        ("lift identity, carried digits", c.lift_corrected),
        ("lift identity, digits without carry", c.lift_literal),
        ("master congruence", c.master_congruence),
        ("part congruences", c.part_congruences),
        (
            "quotient relation with carry term",
            c.quotient_relation_corrected,
        ),
        (
            "quotient relation without carry term",
            c.quotient_relation_literal,
        ),
        ("linear form without carry", c.linear_literal),
        ("ratio form of c", c.ratio_form_matches),
        ("subgroup index", c.subgroup_index),
        ("recovered n", c.recovered_n),
    ];
    for (label, ok) in rows {
        let _ = writeln!(s, "  {:<40} {}", label, mark(ok));
    }
    s
}
