use std::io::{Read, Write};
use std::path::Path;

use anyhow::{Context, Result};
use fcomplete::graph::parse_graph;
use fcomplete::Graph;

pub fn read_input(path: &Path) -> Result<String> {
    if path.as_os_str() == "-" {
        let mut s = String::new();
        std::io::stdin().read_to_string(&mut s).context("reading stdin")?;
        return Ok(s);
    }
    std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))
}

pub fn read_graph(path: &Path) -> Result<Graph> {
    let text = read_input(path)?;
    parse_graph(&text).with_context(|| format!("parsing {}", path.display()))
}

pub fn write_output(path: Option<&Path>, text: &str) -> Result<()> {
    match path {
        Some(p) => std::fs::write(p, text).with_context(|| format!("writing {}", p.display())),
        None => {
            let mut out = std::io::stdout().lock();
            out.write_all(text.as_bytes())?;
            out.flush()?;
            Ok(())
        }
    }
}
