//! Two-part reports: human-readable prose followed by a stable
//! machine-readable key=value section.

use num_traits::{One, Zero};
use quadlie::exactlin::{Matrix, Subspace};

#[derive(Default)]
pub struct Report {
    prose: Vec<String>,
    machine: Vec<(String, String)>,
}

impl Report {
    pub fn new() -> Self {
        Report::default()
    }

    pub fn line(&mut self, s: impl Into<String>) {
        self.prose.push(s.into());
    }

    pub fn kv(&mut self, key: impl Into<String>, value: impl ToString) {
        self.machine.push((key.into(), value.to_string()));
    }

    pub fn print(&self, machine_only: bool) {
        if !machine_only {
            for line in &self.prose {
                println!("{line}");
            }
            println!("-- machine --");
        }
        for (k, v) in &self.machine {
            println!("{k}={v}");
        }
    }
}

pub fn fmt_matrix(m: &Matrix) -> String {
    let rows: Vec<String> = (0..m.rows())
        .map(|r| {
            let entries: Vec<String> = (0..m.cols()).map(|c| m.at(r, c).to_string()).collect();
            format!("[{}]", entries.join(", "))
        })
        .collect();
    format!("[{}]", rows.join(", "))
}

pub fn fmt_subspace(s: &Subspace) -> String {
    fmt_matrix(s.basis())
}

/// Basis rows rendered against named coordinates, for prose output.
pub fn fmt_subspace_named(s: &Subspace, names: &[String]) -> String {
    if s.dim() == 0 {
        return "{0}".to_string();
    }
    let rows: Vec<String> = (0..s.dim())
        .map(|r| {
            let row = s.basis().row(r);
            let terms: Vec<String> = row
                .iter()
                .enumerate()
                .filter(|(_, x)| !x.is_zero())
                .map(|(i, x)| {
                    if x.is_one() {
                        names[i].clone()
                    } else {
                        format!("{x} {}", names[i])
                    }
                })
                .collect();
            terms.join(" + ")
        })
        .collect();
    format!("span{{{}}}", rows.join(", "))
}
