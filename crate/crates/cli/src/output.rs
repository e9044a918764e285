use crate::Format;
use std::fmt::Write as _;

/// Collects `key value…` lines and renders them as TSV or aligned text.
pub struct Out {
    format: Format,
    lines: Vec<Vec<String>>,
}

impl Out {
    pub fn new(format: Format) -> Self {
        Out {
            format,
            lines: Vec::new(),
        }
    }

    pub fn line<I, S>(&mut self, fields: I)
    where
        I: IntoIterator<Item = S>,
        S: ToString,
    {
        self.lines.push(fields.into_iter().map(|f| f.to_string()).collect());
    }

    pub fn kv(&mut self, key: &str, value: impl ToString) {
        self.line([key.to_string(), value.to_string()]);
    }

    /// Pre-formatted TSV lines (`a\tb\n…`).
    pub fn tsv_block(&mut self, block: &str) {
        for l in block.lines() {
            self.line(l.split('\t'));
        }
    }

    pub fn render(&self) -> String {
        let mut s = String::new();
        match self.format {
            Format::Tsv => {
                for l in &self.lines {
                    writeln!(s, "{}", l.join("\t")).unwrap();
                }
            }
            Format::Pretty => {
                let width = self
                    .lines
                    .iter()
                    .filter(|l| l.len() > 1)
                    .map(|l| l[0].chars().count())
                    .max()
                    .unwrap_or(0);
                for l in &self.lines {
                    match l.split_first() {
                        Some((k, rest)) if !rest.is_empty() => {
                            writeln!(s, "{k:<width$}  {}", rest.join("  ")).unwrap()
                        }
                        Some((k, _)) => writeln!(s, "{k}").unwrap(),
                        None => s.push('\n'),
                    }
                }
            }
        }
        s
    }

    pub fn print(&self) {
        print!("{}", self.render());
    }
}
