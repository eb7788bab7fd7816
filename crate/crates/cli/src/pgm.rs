//! Binary PGM (P5) mask files, maxval 255, coverage scaled linearly.

use std::fs;
use std::path::Path;

use thiserror::Error;
use twin_ident_core::viewpoint::SilhouetteMask;

#[derive(Debug, Error)]
pub enum PgmError {
    #[error("{path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
    #[error("{path}: {message}")]
    Format { path: String, message: String },
}

fn format_err(path: &Path, message: impl Into<String>) -> PgmError {
    PgmError::Format {
        path: path.display().to_string(),
        message: message.into(),
    }
}

pub fn encode(mask: &SilhouetteMask) -> Vec<u8> {
    let mut out = format!("P5\n{} {}\n255\n", mask.width(), mask.height()).into_bytes();
    out.extend(
        mask.coverage()
            .iter()
            .map(|c| (c * 255.0).round().clamp(0.0, 255.0) as u8),
    );
    out
}

pub fn write_mask(path: &Path, mask: &SilhouetteMask) -> Result<(), PgmError> {
    fs::write(path, encode(mask)).map_err(|e| PgmError::Io {
        path: path.display().to_string(),
        source: e,
    })
}

struct Cursor<'a> {
    bytes: &'a [u8],
    pos: usize,
}

impl Cursor<'_> {
    /// Next header token, skipping whitespace and `#` comments.
    fn token(&mut self) -> Option<&str> {
        while self.pos < self.bytes.len() {
            match self.bytes[self.pos] {
                b' ' | b'\t' | b'\r' | b'\n' => self.pos += 1,
                b'#' => {
                    while self.pos < self.bytes.len() && self.bytes[self.pos] != b'\n' {
                        self.pos += 1;
                    }
                }
                _ => break,
            }
        }
        let start = self.pos;
        while self.pos < self.bytes.len() && !self.bytes[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
        if start == self.pos {
            None
        } else {
            core::str::from_utf8(&self.bytes[start..self.pos]).ok()
        }
    }
}

pub fn decode(path: &Path, bytes: &[u8]) -> Result<SilhouetteMask, PgmError> {
    // Header: "P5" <ws> width <ws> height <ws> maxval <single ws> raster.
    // Comments (# to end of line) may appear between header tokens.
    let mut cur = Cursor { bytes, pos: 0 };
    let magic = cur
        .token()
        .ok_or_else(|| format_err(path, "unexpected end of header"))?;
    if magic != "P5" {
        return Err(format_err(path, format!("not a binary PGM (magic `{magic}`)")));
    }
    let mut num = |name: &str| -> Result<u32, PgmError> {
        cur.token()
            .and_then(|t| t.parse().ok())
            .ok_or_else(|| format_err(path, format!("invalid {name}")))
    };
    let width = num("width")?;
    let height = num("height")?;
    let maxval = num("maxval")?;
    if maxval != 255 {
        return Err(format_err(path, format!("unsupported maxval {maxval}, expected 255")));
    }
    // Exactly one whitespace byte separates the header from the raster.
    let pos = cur.pos + 1;

    let expected = (width as usize) * (height as usize);
    let data = bytes
        .get(pos..pos + expected)
        .ok_or_else(|| format_err(path, format!("raster truncated: need {expected} bytes")))?;
    let coverage = data.iter().map(|&b| b as f64 / 255.0).collect();
    SilhouetteMask::new(width, height, coverage).map_err(|e| format_err(path, e.to_string()))
}

pub fn read_mask(path: &Path) -> Result<SilhouetteMask, PgmError> {
    let bytes = fs::read(path).map_err(|e| PgmError::Io {
        path: path.display().to_string(),
        source: e,
    })?;
    decode(path, &bytes)
}
