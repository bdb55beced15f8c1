use std::fs::File;
use std::io::{self, BufRead, BufReader, Read, Write};
use std::path::Path;

use pairmatch::graph::parse_edge_list;
use pairmatch::Graph;

pub fn open(input: &str) -> io::Result<Box<dyn BufRead>> {
    if input == "-" {
        Ok(Box::new(BufReader::new(io::stdin())))
    } else {
        Ok(Box::new(BufReader::new(File::open(input)?)))
    }
}

/// Whole input as one edge-list graph.
pub fn read_edge_list(input: &str) -> io::Result<pairmatch::Result<Graph>> {
    let mut text = String::new();
    open(input)?.read_to_string(&mut text)?;
    Ok(parse_edge_list(&text))
}

pub fn write_output(out: Option<&Path>, text: &str) -> io::Result<()> {
    match out {
        Some(path) => std::fs::write(path, text),
        None => {
            let mut stdout = io::stdout().lock();
            stdout.write_all(text.as_bytes())?;
            stdout.flush()
        }
    }
}
