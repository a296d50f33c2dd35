//! Netpbm bitmap and pixmap IO.
//!
//! Binary grids go out as PBM (plain P1 or packed P4, bit 1 = filled);
//! RGB images as PPM (plain P3 or raw P6, maxval 255, channel byte =
//! value * 255 rounded half up). Row 1 of a tensor is the top image row.
//! The readers parse everything the writers emit plus comments and
//! arbitrary token whitespace, so golden files round-trip byte for byte.

use std::fs::File;
use std::io::{BufReader, BufWriter, Read, Write};
use std::path::Path;

use tensorfractal_core::{DenseTensor, Shape};

use crate::render::RgbImage;
use crate::{Error, Result};

/// Samples per output line in plain formats; 35 two-character samples keep
/// lines at or below the common 70-column limit.
const PLAIN_SAMPLES_PER_LINE: usize = 35;

fn quantize(v: f64) -> u8 {
    (v * 255.0 + 0.5) as u8
}

/// Writes an order-2 binary tensor as PBM; `packed` selects P4 over P1.
pub fn write_pbm<W: Write>(t: &DenseTensor, mut out: W, packed: bool) -> Result<()> {
    t.require_binary()?;
    if t.order() != 2 {
        return Err(Error::Format(format!(
            "pbm needs an order-2 tensor, got order {}",
            t.order()
        )));
    }
    let height = t.shape().dims()[0];
    let width = t.shape().dims()[1];
    if packed {
        write!(out, "P4\n{width} {height}\n")?;
        let mut row = vec![0u8; width.div_ceil(8)];
        for y in 0..height {
            row.fill(0);
            for (x, &cell) in t.data()[y * width..(y + 1) * width].iter().enumerate() {
                if cell == 1 {
                    row[x / 8] |= 0x80 >> (x % 8);
                }
            }
            out.write_all(&row)?;
        }
    } else {
        write!(out, "P1\n{width} {height}\n")?;
        for y in 0..height {
            for chunk in t.data()[y * width..(y + 1) * width].chunks(PLAIN_SAMPLES_PER_LINE) {
                let line: Vec<&str> = chunk
                    .iter()
                    .map(|&v| if v == 1 { "1" } else { "0" })
                    .collect();
                writeln!(out, "{}", line.join(" "))?;
            }
        }
    }
    out.flush()?;
    Ok(())
}

/// Writes an RGB image as PPM with maxval 255; `packed` selects P6 over P3.
pub fn write_ppm<W: Write>(img: &RgbImage, mut out: W, packed: bool) -> Result<()> {
    let side = img.side();
    if packed {
        write!(out, "P6\n{side} {side}\n255\n")?;
        let bytes: Vec<u8> = img.data().iter().map(|&v| quantize(v)).collect();
        out.write_all(&bytes)?;
    } else {
        write!(out, "P3\n{side} {side}\n255\n")?;
        for pixel in img.data().chunks(3) {
            writeln!(
                out,
                "{} {} {}",
                quantize(pixel[0]),
                quantize(pixel[1]),
                quantize(pixel[2])
            )?;
        }
    }
    out.flush()?;
    Ok(())
}

pub fn write_pbm_file(t: &DenseTensor, path: &Path, packed: bool) -> Result<()> {
    write_pbm(t, BufWriter::new(File::create(path)?), packed)
}

pub fn write_ppm_file(img: &RgbImage, path: &Path, packed: bool) -> Result<()> {
    write_ppm(img, BufWriter::new(File::create(path)?), packed)
}

/// Byte cursor over a netpbm header: whitespace-separated tokens with
/// `#`-to-end-of-line comments, tracking line numbers for diagnostics.
struct Cursor {
    bytes: Vec<u8>,
    pos: usize,
    line: usize,
}

impl Cursor {
    fn new(bytes: Vec<u8>) -> Self {
        Cursor {
            bytes,
            pos: 0,
            line: 1,
        }
    }

    fn error(&self, message: impl Into<String>) -> Error {
        Error::Parse {
            line: self.line,
            message: message.into(),
        }
    }

    fn bump(&mut self) -> Option<u8> {
        let b = *self.bytes.get(self.pos)?;
        self.pos += 1;
        if b == b'\n' {
            self.line += 1;
        }
        Some(b)
    }

    fn peek(&self) -> Option<u8> {
        self.bytes.get(self.pos).copied()
    }

    fn skip_space_and_comments(&mut self) {
        while let Some(b) = self.peek() {
            if b.is_ascii_whitespace() {
                self.bump();
            } else if b == b'#' {
                while let Some(c) = self.bump() {
                    if c == b'\n' {
                        break;
                    }
                }
            } else {
                break;
            }
        }
    }

    fn token(&mut self) -> Result<String> {
        self.skip_space_and_comments();
        let start = self.pos;
        while let Some(b) = self.peek() {
            if b.is_ascii_whitespace() {
                break;
            }
            self.bump();
        }
        if self.pos == start {
            return Err(self.error("unexpected end of input"));
        }
        String::from_utf8(self.bytes[start..self.pos].to_vec())
            .map_err(|_| self.error("token is not valid text"))
    }

    fn unsigned(&mut self, what: &str) -> Result<usize> {
        let token = self.token()?;
        token
            .parse()
            .map_err(|_| self.error(format!("invalid {what} '{token}'")))
    }
}

/// Reads a PBM file (P1 or P4) into an order-2 binary tensor.
pub fn read_pbm<R: Read>(mut input: R) -> Result<DenseTensor> {
    let mut bytes = Vec::new();
    input.read_to_end(&mut bytes)?;
    let mut cur = Cursor::new(bytes);
    let magic = cur.token()?;
    let width;
    let height;
    let mut data;
    match magic.as_str() {
        "P1" => {
            width = cur.unsigned("width")?;
            height = cur.unsigned("height")?;
            data = Vec::with_capacity(width * height);
            while data.len() < width * height {
                cur.skip_space_and_comments();
                match cur.bump() {
                    Some(b'0') => data.push(0),
                    Some(b'1') => data.push(1),
                    Some(other) => {
                        return Err(cur.error(format!(
                            "unexpected character '{}' in bitmap",
                            other as char
                        )))
                    }
                    None => return Err(cur.error("bitmap ends early")),
                }
            }
        }
        "P4" => {
            width = cur.unsigned("width")?;
            height = cur.unsigned("height")?;
            // Exactly one whitespace byte separates header and raster.
            match cur.bump() {
                Some(b) if b.is_ascii_whitespace() => {}
                _ => return Err(cur.error("missing raster separator")),
            }
            let row_bytes = width.div_ceil(8);
            if cur.bytes.len() - cur.pos < row_bytes * height {
                return Err(cur.error("raster ends early"));
            }
            data = Vec::with_capacity(width * height);
            for y in 0..height {
                let row = &cur.bytes[cur.pos + y * row_bytes..cur.pos + (y + 1) * row_bytes];
                for x in 0..width {
                    data.push(u64::from(row[x / 8] >> (7 - x % 8) & 1));
                }
            }
        }
        other => return Err(cur.error(format!("expected P1 or P4, found '{other}'"))),
    }
    let shape = Shape::new(vec![height, width])?;
    Ok(DenseTensor::new(shape, data)?)
}

/// Reads a PPM file (P3 or P6) into an [`RgbImage`]; the image must be
/// square. Values are normalized by the file's maxval.
pub fn read_ppm<R: Read>(mut input: R) -> Result<RgbImage> {
    let mut bytes = Vec::new();
    input.read_to_end(&mut bytes)?;
    let mut cur = Cursor::new(bytes);
    let magic = cur.token()?;
    if magic != "P3" && magic != "P6" {
        return Err(cur.error(format!("expected P3 or P6, found '{magic}'")));
    }
    let width = cur.unsigned("width")?;
    let height = cur.unsigned("height")?;
    if width != height {
        return Err(cur.error(format!("image is not square: {width}x{height}")));
    }
    let maxval = cur.unsigned("maxval")?;
    if maxval == 0 || maxval > 255 {
        return Err(cur.error(format!("unsupported maxval {maxval}")));
    }
    let samples = width * height * 3;
    let mut data = Vec::with_capacity(samples);
    if magic == "P3" {
        for _ in 0..samples {
            let v = cur.unsigned("sample")?;
            if v > maxval {
                return Err(cur.error(format!("sample {v} exceeds maxval {maxval}")));
            }
            data.push(v as f64 / maxval as f64);
        }
    } else {
        match cur.bump() {
            Some(b) if b.is_ascii_whitespace() => {}
            _ => return Err(cur.error("missing raster separator")),
        }
        if cur.bytes.len() - cur.pos < samples {
            return Err(cur.error("raster ends early"));
        }
        for i in 0..samples {
            let v = cur.bytes[cur.pos + i] as usize;
            if v > maxval {
                return Err(cur.error(format!("sample {v} exceeds maxval {maxval}")));
            }
            data.push(v as f64 / maxval as f64);
        }
    }
    RgbImage::new(width, data)
}

pub fn read_pbm_file(path: &Path) -> Result<DenseTensor> {
    read_pbm(BufReader::new(File::open(path)?))
}

pub fn read_ppm_file(path: &Path) -> Result<RgbImage> {
    read_ppm(BufReader::new(File::open(path)?))
}
