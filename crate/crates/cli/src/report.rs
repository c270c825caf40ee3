use std::time::Instant;

/// Stage facts and verdicts, printed to stderr so that output files stay
/// byte-for-byte reproducible.
pub struct Report {
    start: Instant,
    lines: Vec<(String, String)>,
}

impl Report {
    pub fn new(command: &str) -> Self {
        Report {
            start: Instant::now(),
            lines: vec![("command".into(), command.into())],
        }
    }

    pub fn add(&mut self, key: &str, value: impl ToString) {
        self.lines.push((key.into(), value.to_string()));
    }

    pub fn verdict(&mut self, key: &str, outcome: Result<(), String>) {
        let v = match outcome {
            Ok(()) => "verified".to_string(),
            Err(detail) => format!("failed({detail})"),
        };
        self.add(key, v);
    }

    pub fn skipped(&mut self, key: &str) {
        self.add(key, "skipped(budget)");
    }

    pub fn print(&self) {
        for (k, v) in &self.lines {
            eprintln!("{k}: {v}");
        }
        eprintln!("elapsed: {:.3}s", self.start.elapsed().as_secs_f64());
    }
}
