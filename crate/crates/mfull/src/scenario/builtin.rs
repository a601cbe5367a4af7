//! Scenario files compiled into the binary.

const BUILTIN: &[(&str, &str)] = &[
    ("example-CGTT", include_str!("../../scenarios/example-CGTT.scn")),
    ("example-it", include_str!("../../scenarios/example-it.scn")),
    ("example-eg1", include_str!("../../scenarios/example-eg1.scn")),
    ("example-eg2", include_str!("../../scenarios/example-eg2.scn")),
    ("jorgensen", include_str!("../../scenarios/jorgensen.scn")),
    ("celwag-456", include_str!("../../scenarios/celwag-456.scn")),
    ("celwag-345", include_str!("../../scenarios/celwag-345.scn")),
    ("celwag-quadric", include_str!("../../scenarios/celwag-quadric.scn")),
];

pub fn builtin(name: &str) -> Option<&'static str> {
    BUILTIN.iter().find(|b| b.0 == name).map(|b| b.1)
}

pub fn builtin_names() -> Vec<&'static str> {
    BUILTIN.iter().map(|b| b.0).collect()
}
