use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::Path;

use crate::engine::LevelSet;
use crate::error::{Result, UlamError};

pub const ZERO_SHADE: u8 = 230;
pub const ONE_SHADE: u8 = 25;

/// Grayscale raster of the zero-leading members of a level: one row per
/// word in ascending code order, one column per letter.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Heatmap {
    pub width: u32,
    pub height: u64,
    pub pixels: Vec<u8>,
}

impl Heatmap {
    pub fn from_level(level: &LevelSet) -> Result<Self> {
        let n = level.length();
        let half = 1u64 << (n - 1);
        let rows: Vec<u64> = level.codes().take_while(|&c| c < half).collect();
        if rows.is_empty() {
            return Err(UlamError::Domain(format!(
                "level {n} has no zero-leading members"
            )));
        }
        let mut pixels = Vec::with_capacity(rows.len() * n as usize);
        for code in &rows {
            for i in (0..n).rev() {
                pixels.push(if (code >> i) & 1 == 1 {
                    ONE_SHADE
                } else {
                    ZERO_SHADE
                });
            }
        }
        Ok(Heatmap {
            width: n,
            height: rows.len() as u64,
            pixels,
        })
    }

    /// Binary PGM (`P5`, maxval 255).
    pub fn write_pgm<W: Write>(&self, mut out: W) -> std::io::Result<()> {
        write!(out, "P5\n{} {}\n255\n", self.width, self.height)?;
        out.write_all(&self.pixels)
    }

    pub fn to_pgm_bytes(&self) -> Vec<u8> {
        let mut v = Vec::with_capacity(self.pixels.len() + 32);
        self.write_pgm(&mut v).expect("writing to a Vec");
        v
    }
}

pub fn render_heatmap(level: &LevelSet, path: impl AsRef<Path>) -> Result<()> {
    let path = path.as_ref();
    let map = Heatmap::from_level(level)?;
    let file = File::create(path).map_err(|e| UlamError::io(path, e))?;
    let mut out = BufWriter::new(file);
    map.write_pgm(&mut out)
        .map_err(|e| UlamError::io(path, e))?;
    out.flush().map_err(|e| UlamError::io(path, e))
}
