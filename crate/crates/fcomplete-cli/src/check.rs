use anyhow::Result;
use fcomplete::recognition::{blocks_of, build_ucd, is_pseudosplit, is_split, is_threshold, is_trivially_perfect};
use fcomplete::VertexSet;

use crate::io::{read_graph, write_output};
use crate::CheckArgs;

fn set(s: &VertexSet) -> String {
    let v: Vec<String> = s.iter().map(|x| x.to_string()).collect();
    format!("{{{}}}", v.join(","))
}

fn yes(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

pub fn run_check(a: &CheckArgs) -> Result<()> {
    let g = read_graph(&a.input)?;
    let tp = is_trivially_perfect(&g);
    let mut out = format!("n={} m={}\n", g.n(), g.m());
    out.push_str(&format!("TP={}\n", yes(tp)));
    out.push_str(&format!("threshold={}\n", yes(is_threshold(&g))));
    out.push_str(&format!("split={}\n", yes(is_split(&g))));
    out.push_str(&format!("pseudosplit={}\n", yes(is_pseudosplit(&g).is_some())));
    if tp {
        let ucd = build_ucd(&g)?;
        let all = g.vertices();
        out.push_str("bag\tblock\ttail\n");
        for b in blocks_of(&ucd) {
            let d = if b.subtree == all { "V".to_string() } else { set(&b.subtree) };
            out.push_str(&format!("{}\t({}, {})\t{}\n", set(&b.bag), set(&b.bag), d, set(&b.tail)));
        }
    }
    write_output(None, &out)
}
