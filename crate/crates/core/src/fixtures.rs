//! Bundled instances from the worked examples, plus two constructed ones.

use crate::genop::GeneratedOp;
use crate::spec::InstanceSpec;

pub struct Fixture {
    pub name: &'static str,
    pub spec: InstanceSpec,
    pub op: GeneratedOp,
}

pub const SOURCES: &[(&str, &str)] = &[
    ("example_3_1", include_str!("../fixtures/example_3_1.json")),
    ("example_4_2_1", include_str!("../fixtures/example_4_2_1.json")),
    ("example_4_2_2", include_str!("../fixtures/example_4_2_2.json")),
    ("def_4_1_ex1", include_str!("../fixtures/def_4_1_ex1.json")),
    ("def_4_1_ex3", include_str!("../fixtures/def_4_1_ex3.json")),
    ("derived_no_instance", include_str!("../fixtures/derived_no_instance.json")),
    ("non_idempotent", include_str!("../fixtures/non_idempotent.json")),
];

pub fn load(name: &str) -> Option<Fixture> {
    let (name, text) = SOURCES.iter().find(|(n, _)| *n == name)?;
    let spec = InstanceSpec::parse(text).expect("bundled fixture parses");
    let op = spec.build().expect("bundled fixture builds");
    Some(Fixture { name, spec, op })
}

pub fn all() -> Vec<Fixture> {
    SOURCES.iter().map(|(n, _)| load(n).expect("listed")).collect()
}

pub fn example_3_1() -> Fixture {
    load("example_3_1").expect("bundled")
}

pub fn example_4_2_1() -> Fixture {
    load("example_4_2_1").expect("bundled")
}

pub fn example_4_2_2() -> Fixture {
    load("example_4_2_2").expect("bundled")
}

pub fn def_4_1_ex1() -> Fixture {
    load("def_4_1_ex1").expect("bundled")
}

pub fn def_4_1_ex3() -> Fixture {
    load("def_4_1_ex3").expect("bundled")
}

pub fn derived_no_instance() -> Fixture {
    load("derived_no_instance").expect("bundled")
}

pub fn non_idempotent() -> Fixture {
    load("non_idempotent").expect("bundled")
}
