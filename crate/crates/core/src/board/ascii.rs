//! Text boards: `.` is an empty cell, `#` a blocked one.
//!
//! A board file may hold several boards separated by blank lines; together
//! they denote a disjunctive sum.

use super::{check_size, BoardError, Position};

impl Position {
    pub fn from_ascii(text: &str) -> Result<Self, BoardError> {
        let lines: Vec<(usize, &str)> = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.trim_end_matches('\r')))
            .filter(|(_, l)| !l.trim().is_empty())
            .collect();
        parse_block(&lines)
    }

    /// Parses one or more boards separated by blank lines.
    pub fn parse_sum(text: &str) -> Result<Vec<Self>, BoardError> {
        let mut boards = Vec::new();
        let mut block: Vec<(usize, &str)> = Vec::new();
        for (i, line) in text.lines().enumerate() {
            let line = line.trim_end_matches('\r');
            if line.trim().is_empty() {
                if !block.is_empty() {
                    boards.push(parse_block(&block)?);
                    block.clear();
                }
            } else {
                block.push((i + 1, line));
            }
        }
        if !block.is_empty() {
            boards.push(parse_block(&block)?);
        }
        if boards.is_empty() {
            return Err(BoardError::Ascii {
                line: 1,
                message: "no board found".into(),
            });
        }
        Ok(boards)
    }

    pub fn to_ascii(&self) -> String {
        let mut out = String::with_capacity(self.height() * (self.width() + 1));
        for r in 0..self.height() {
            for c in 0..self.width() {
                out.push(if self.is_free(r, c) { '.' } else { '#' });
            }
            out.push('\n');
        }
        out
    }
}

fn parse_block(lines: &[(usize, &str)]) -> Result<Position, BoardError> {
    let Some(&(first_line, first)) = lines.first() else {
        return Err(BoardError::Ascii {
            line: 1,
            message: "no board found".into(),
        });
    };
    let width = first.trim().chars().count();
    if let Err(BoardError::Size { height, width }) = check_size(lines.len(), width) {
        return Err(BoardError::Ascii {
            line: first_line,
            message: format!("board size {height}x{width} out of range"),
        });
    }
    let mut rows = Vec::with_capacity(lines.len());
    for &(line_no, line) in lines {
        let line = line.trim();
        if line.chars().count() != width {
            return Err(BoardError::Ascii {
                line: line_no,
                message: format!("expected {width} cells, found {}", line.chars().count()),
            });
        }
        let mut bits = 0u64;
        for (c, ch) in line.chars().enumerate() {
            match ch {
                '.' => bits |= 1 << c,
                '#' => {}
                other => {
                    return Err(BoardError::Ascii {
                        line: line_no,
                        message: format!("illegal character {other:?} at column {}", c + 1),
                    })
                }
            }
        }
        rows.push(bits);
    }
    Position::from_free_rows(width, &rows)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::board::Player;

    #[test]
    fn parses_rectangles_and_masks() {
        assert_eq!(Position::from_ascii("..\n..\n").unwrap(), Position::rect(2, 2).unwrap());
        let p = Position::from_ascii("#.").unwrap();
        assert_eq!((p.height(), p.width()), (1, 2));
        assert!(p.is_blocked(0, 0));
        assert!(!p.has_move(Player::Vertical) && !p.has_move(Player::Horizontal));
    }

    #[test]
    fn round_trips() {
        let text = "#..\n.#.\n...\n";
        assert_eq!(Position::from_ascii(text).unwrap().to_ascii(), text);
    }

    #[test]
    fn rejects_bad_input() {
        assert!(matches!(Position::from_ascii("..\n.\n"), Err(BoardError::Ascii { line: 2, .. })));
        assert!(matches!(Position::from_ascii(".x\n"), Err(BoardError::Ascii { line: 1, .. })));
        assert!(Position::from_ascii("").is_err());
        assert!(Position::from_ascii(&".".repeat(65)).is_err());
    }

    #[test]
    fn sums_split_on_blank_lines() {
        let boards = Position::parse_sum("..\n..\n\n\n.\n.\n").unwrap();
        assert_eq!(boards, vec![Position::rect(2, 2).unwrap(), Position::rect(2, 1).unwrap()]);
    }
}
