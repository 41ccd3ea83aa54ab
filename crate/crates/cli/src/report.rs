//! Text and machine renderings of analysis results.

use std::fmt::Write as _;

use rootwork::{CfVerdict, EeVerdict, ReductionSystem, RootOutcome, RootReport, VertexId};

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Text,
    Machine,
}

pub fn set(sys: &ReductionSystem, vs: &[VertexId]) -> String {
    let mut names: Vec<&str> = vs.iter().map(|&v| sys.name(v)).collect();
    names.sort_unstable();
    format!("{{{}}}", names.join(", "))
}

fn machine_set(sys: &ReductionSystem, vs: &[VertexId]) -> String {
    let mut names: Vec<&str> = vs.iter().map(|&v| sys.name(v)).collect();
    names.sort_unstable();
    names.join(",")
}

/// Vertices ordered by name.
pub fn by_name(sys: &ReductionSystem) -> Vec<VertexId> {
    let mut vs: Vec<VertexId> = sys.vertices().collect();
    vs.sort_by(|&a, &b| sys.name(a).cmp(sys.name(b)));
    vs
}

pub fn cycle(sys: &ReductionSystem, cycle: &[VertexId]) -> String {
    cycle
        .iter()
        .map(|&v| sys.name(v))
        .collect::<Vec<_>>()
        .join(" -> ")
}

fn edge(sys: &ReductionSystem, e: rootwork::EdgeId) -> String {
    let edge = sys.edge(e).expect("edge from this system");
    format!("{} -> {} [{}]", sys.name(edge.src), sys.name(edge.dst), e)
}

pub fn ee_line(sys: &ReductionSystem, ee: Option<&EeVerdict>, fmt: Format) -> String {
    match (ee, fmt) {
        (None, Format::Text) => "ee: undefined (no complexity function)".into(),
        (None, Format::Machine) => "ee\tundefined".into(),
        (Some(EeVerdict::Holds), Format::Text) => "ee: holds".into(),
        (Some(EeVerdict::Holds), Format::Machine) => "ee\tholds".into(),
        (
            Some(EeVerdict::Fails {
                vertex,
                first,
                second,
            }),
            Format::Text,
        ) => format!(
            "ee: fails at {}: {} and {} are not equivalent",
            sys.name(*vertex),
            edge(sys, *first),
            edge(sys, *second)
        ),
        (
            Some(EeVerdict::Fails {
                vertex,
                first,
                second,
            }),
            Format::Machine,
        ) => {
            format!("ee\tfails\t{}\t{first}\t{second}", sys.name(*vertex))
        }
    }
}

pub fn cf_block(sys: &ReductionSystem, cf: &CfVerdict, fmt: Format) -> String {
    let mut out = String::new();
    match (cf, fmt) {
        (CfVerdict::Holds(map), Format::Text) => {
            out.push_str("cf: holds (longest-path complexity)\n");
            for v in by_name(sys) {
                let c = map.get(v).expect("total map");
                writeln!(out, "  {} {c}", sys.name(v)).unwrap();
            }
        }
        (CfVerdict::Holds(map), Format::Machine) => {
            out.push_str("cf\tholds\n");
            for v in by_name(sys) {
                let c = map.get(v).expect("total map");
                writeln!(out, "complexity\t{}\t{c}", sys.name(v)).unwrap();
            }
        }
        (CfVerdict::Fails(c), Format::Text) => {
            writeln!(out, "cf: fails (cycle {})", cycle(sys, c)).unwrap();
        }
        (CfVerdict::Fails(c), Format::Machine) => {
            let names: Vec<&str> = c.iter().map(|&v| sys.name(v)).collect();
            writeln!(out, "cf\tfails\t{}", names.join(",")).unwrap();
        }
    }
    out
}

/// One record per vertex. Machine form: `vertex<TAB>roots<TAB>classes`, with
/// roots comma-separated and `-` where a value is undefined.
pub fn verify(sys: &ReductionSystem, report: &RootReport, fmt: Format) -> String {
    let mut out = String::new();
    if fmt == Format::Text {
        match &report.cf {
            CfVerdict::Holds(_) => out.push_str("cf: holds\n"),
            CfVerdict::Fails(c) => writeln!(out, "cf: fails (cycle {})", cycle(sys, c)).unwrap(),
        }
        writeln!(out, "{}", ee_line(sys, report.ee.as_ref(), fmt)).unwrap();
    }
    for v in by_name(sys) {
        let r = &report.vertices[&v];
        let classes = r.classes.map_or("-".to_string(), |c| c.to_string());
        match fmt {
            Format::Text => {
                let roots = match &r.outcome {
                    RootOutcome::Unique(root) => sys.name(*root).to_string(),
                    RootOutcome::Multiple(many) => set(sys, many),
                    RootOutcome::Undefined => "undefined (cycle reachable)".to_string(),
                };
                writeln!(out, "{}: {roots} (classes {classes})", sys.name(v)).unwrap();
            }
            Format::Machine => {
                let roots = match &r.outcome {
                    RootOutcome::Unique(root) => sys.name(*root).to_string(),
                    RootOutcome::Multiple(many) => machine_set(sys, many),
                    RootOutcome::Undefined => "-".to_string(),
                };
                writeln!(out, "{}\t{roots}\t{classes}", sys.name(v)).unwrap();
            }
        }
    }
    if fmt == Format::Text {
        match report.violation {
            None => out.push_str("theorem: consistent\n"),
            Some(v) => writeln!(
                out,
                "theorem: VIOLATED at {} (cf and ee hold but roots are not unique)",
                sys.name(v)
            )
            .unwrap(),
        }
    }
    out
}

pub fn roots(sys: &ReductionSystem, vs: &[VertexId], fmt: Format) -> String {
    match (vs, fmt) {
        ([single], _) => sys.name(*single).to_string(),
        (_, Format::Text) => set(sys, vs),
        (_, Format::Machine) => machine_set(sys, vs),
    }
}
