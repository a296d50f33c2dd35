//! Whitespace-delimited text form of integer tensors.
//!
//! An order-1 tensor is one line of values; an order-2 tensor is one line
//! per row; higher orders split along the first axis into blocks separated
//! by `order - 2` blank lines (an order-3 tensor reads as a sequence of
//! matrices, an order-4 tensor as a sequence of those sequences, and so
//! on). The parser infers the order from the deepest blank-line run, so
//! leading axes of extent 1 are invisible; pass the expected order to have
//! them restored.

use tensorfractal_core::{DenseTensor, Shape};

use crate::{Error, Result};

pub fn format_tensor(t: &DenseTensor) -> String {
    let mut out = String::new();
    format_block(t.data(), t.shape().dims(), &mut out);
    out
}

fn format_block(data: &[u64], dims: &[usize], out: &mut String) {
    match dims {
        [_] => {
            push_row(data, out);
        }
        [rows, cols] => {
            for r in 0..*rows {
                push_row(&data[r * cols..(r + 1) * cols], out);
            }
        }
        [blocks, rest @ ..] => {
            let chunk: usize = rest.iter().product();
            for b in 0..*blocks {
                if b > 0 {
                    for _ in 0..dims.len() - 2 {
                        out.push('\n');
                    }
                }
                format_block(&data[b * chunk..(b + 1) * chunk], rest, out);
            }
        }
        [] => unreachable!("shapes have order >= 1"),
    }
}

fn push_row(row: &[u64], out: &mut String) {
    for (i, v) in row.iter().enumerate() {
        if i > 0 {
            out.push(' ');
        }
        out.push_str(&v.to_string());
    }
    out.push('\n');
}

/// Parses the text form back into a tensor.
///
/// `expected_order`, when given, restores leading extent-1 axes the text
/// cannot encode; text of a deeper structure than expected is an error.
pub fn parse_tensor(text: &str, expected_order: Option<usize>) -> Result<DenseTensor> {
    // Logical lines with original 1-based numbers; trailing blank lines are
    // insignificant, interior ones encode nesting depth.
    let lines: Vec<(usize, &str)> = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim_end()))
        .collect();
    let mut end = lines.len();
    while end > 0 && lines[end - 1].1.trim().is_empty() {
        end -= 1;
    }
    let lines = &lines[..end];
    let first_content =
        lines
            .iter()
            .position(|(_, l)| !l.trim().is_empty())
            .ok_or(Error::Parse {
                line: 1,
                message: "no tensor data".into(),
            })?;
    let lines = &lines[first_content..];

    let mut max_run = 0usize;
    let mut run = 0usize;
    for (_, l) in lines {
        if l.trim().is_empty() {
            run += 1;
            max_run = max_run.max(run);
        } else {
            run = 0;
        }
    }
    let inferred = match (max_run, lines.len()) {
        (0, 1) => 1,
        (0, _) => 2,
        (r, _) => r + 2,
    };
    let order = match expected_order {
        None => inferred,
        Some(expected) if expected >= inferred => expected,
        Some(expected) => {
            return Err(Error::Parse {
                line: lines[0].0,
                message: format!(
                    "text encodes an order-{inferred} tensor, expected order {expected}"
                ),
            })
        }
    };

    let (mut dims, data) = parse_block(lines, inferred)?;
    while dims.len() < order {
        dims.insert(0, 1);
    }
    let shape = Shape::new(dims)?;
    Ok(DenseTensor::new(shape, data)?)
}

fn parse_block(lines: &[(usize, &str)], order: usize) -> Result<(Vec<usize>, Vec<u64>)> {
    match order {
        1 => {
            let (no, line) = lines[0];
            let row = parse_row(no, line)?;
            Ok((vec![row.len()], row))
        }
        2 => {
            let mut data = Vec::new();
            let mut cols = None;
            for &(no, line) in lines {
                if line.trim().is_empty() {
                    return Err(Error::Parse {
                        line: no,
                        message: "unexpected blank line inside a matrix".into(),
                    });
                }
                let row = parse_row(no, line)?;
                match cols {
                    None => cols = Some(row.len()),
                    Some(c) if c != row.len() => {
                        return Err(Error::Parse {
                            line: no,
                            message: format!(
                                "row has {} values, previous rows have {c}",
                                row.len()
                            ),
                        })
                    }
                    Some(_) => {}
                }
                data.extend(row);
            }
            Ok((vec![lines.len(), cols.unwrap_or(0)], data))
        }
        _ => {
            let mut blocks = Vec::new();
            let mut start = 0usize;
            let mut i = 0usize;
            while i < lines.len() {
                if lines[i].1.trim().is_empty() {
                    let run_start = i;
                    while i < lines.len() && lines[i].1.trim().is_empty() {
                        i += 1;
                    }
                    let run = i - run_start;
                    if run == order - 2 {
                        blocks.push(&lines[start..run_start]);
                        start = i;
                    } else if run > order - 2 {
                        return Err(Error::Parse {
                            line: lines[run_start].0,
                            message: format!(
                                "blank run of {run} lines is too deep for an order-{order} tensor"
                            ),
                        });
                    }
                } else {
                    i += 1;
                }
            }
            blocks.push(&lines[start..]);

            let mut dims = None;
            let mut data = Vec::new();
            for block in &blocks {
                if block.is_empty() {
                    return Err(Error::Parse {
                        line: lines[0].0,
                        message: "empty block".into(),
                    });
                }
                let (block_dims, block_data) = parse_block(block, order - 1)?;
                match &dims {
                    None => dims = Some(block_dims),
                    Some(d) if *d != block_dims => {
                        return Err(Error::Parse {
                            line: block[0].0,
                            message: "blocks have mismatched shapes".into(),
                        })
                    }
                    Some(_) => {}
                }
                data.extend(block_data);
            }
            let mut full_dims = vec![blocks.len()];
            full_dims.extend(dims.unwrap_or_default());
            Ok((full_dims, data))
        }
    }
}

fn parse_row(line_no: usize, line: &str) -> Result<Vec<u64>> {
    line.split_whitespace()
        .map(|token| {
            token.parse().map_err(|_| Error::Parse {
                line: line_no,
                message: format!("invalid value '{token}'"),
            })
        })
        .collect()
}
