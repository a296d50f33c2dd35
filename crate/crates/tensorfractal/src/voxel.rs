//! Plain-text voxel lists for order-3 binary tensors.
//!
//! Format: a header line `# voxels <nx> <ny> <nz> <count>` followed by one
//! `x y z` line per occupied cell, 0-based, in ascending lexicographic
//! order (which is exactly the row-major storage order).

use std::fs::File;
use std::io::{BufRead, BufReader, BufWriter, Read, Write};
use std::path::Path;

use tensorfractal_core::{DenseTensor, Shape};

use crate::{Error, Result};

pub fn write_voxels<W: Write>(t: &DenseTensor, mut out: W) -> Result<()> {
    t.require_binary()?;
    if t.order() != 3 {
        return Err(Error::Format(format!(
            "voxel output needs an order-3 tensor, got order {}",
            t.order()
        )));
    }
    let dims = t.shape().dims();
    let count = t.count_nonzeros()?;
    writeln!(
        out,
        "# voxels {} {} {} {}",
        dims[0], dims[1], dims[2], count
    )?;
    for (flat, &v) in t.data().iter().enumerate() {
        if v == 1 {
            let c = t.shape().coords_of(flat);
            writeln!(out, "{} {} {}", c[0], c[1], c[2])?;
        }
    }
    out.flush()?;
    Ok(())
}

pub fn write_voxels_file(t: &DenseTensor, path: &Path) -> Result<()> {
    write_voxels(t, BufWriter::new(File::create(path)?))
}

pub fn read_voxels<R: Read>(input: R) -> Result<DenseTensor> {
    let mut lines = BufReader::new(input).lines();
    let header = lines.next().ok_or(Error::Parse {
        line: 1,
        message: "missing header".into(),
    })??;
    let fields: Vec<&str> = header.split_whitespace().collect();
    if fields.len() != 6 || fields[0] != "#" || fields[1] != "voxels" {
        return Err(Error::Parse {
            line: 1,
            message: format!("malformed header '{header}'"),
        });
    }
    let parse = |line: usize, token: &str, what: &str| -> Result<usize> {
        token.parse().map_err(|_| Error::Parse {
            line,
            message: format!("invalid {what} '{token}'"),
        })
    };
    let dims = [
        parse(1, fields[2], "extent")?,
        parse(1, fields[3], "extent")?,
        parse(1, fields[4], "extent")?,
    ];
    let declared = parse(1, fields[5], "count")?;

    let shape = Shape::new(dims.to_vec())?;
    let mut data = vec![0u64; shape.element_count()];
    let mut seen = 0usize;
    for (i, line) in lines.enumerate() {
        let line_no = i + 2;
        let line = line?;
        if line.trim().is_empty() {
            continue;
        }
        let coords: Vec<&str> = line.split_whitespace().collect();
        if coords.len() != 3 {
            return Err(Error::Parse {
                line: line_no,
                message: format!("expected 3 coordinates, found {}", coords.len()),
            });
        }
        let mut cell = [0u64; 3];
        for (axis, token) in coords.iter().enumerate() {
            let c = parse(line_no, token, "coordinate")? as u64;
            if c >= dims[axis] as u64 {
                return Err(Error::Parse {
                    line: line_no,
                    message: format!("coordinate {c} exceeds extent {}", dims[axis]),
                });
            }
            cell[axis] = c;
        }
        let flat = shape.flat_index(&cell)?;
        if data[flat] == 1 {
            return Err(Error::Parse {
                line: line_no,
                message: format!("duplicate cell {} {} {}", cell[0], cell[1], cell[2]),
            });
        }
        data[flat] = 1;
        seen += 1;
    }
    if seen != declared {
        return Err(Error::Parse {
            line: 1,
            message: format!("header declares {declared} cells, file lists {seen}"),
        });
    }
    Ok(DenseTensor::new(shape, data)?)
}

pub fn read_voxels_file(path: &Path) -> Result<DenseTensor> {
    read_voxels(File::open(path)?)
}
