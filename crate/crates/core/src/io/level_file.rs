//! Binary level files.
//!
//! Layout (all integers little-endian):
//!
//! | offset | size | field                         |
//! |--------|------|-------------------------------|
//! | 0      | 4    | magic `ULMW`                  |
//! | 4      | 1    | version (1)                   |
//! | 5      | 4    | length `n` (u32)              |
//! | 9      | 8    | member count (u64)            |
//! | 17     | ⌈2ⁿ/8⌉ | membership bits, LSB first  |

use std::fs::File;
use std::io::{BufReader, BufWriter, Read, Write};
use std::path::Path;

use crate::bitset::Bitset;
use crate::engine::LevelSet;
use crate::error::{Result, UlamError};
use crate::word::MAX_WORD_LENGTH;

pub const MAGIC: &[u8; 4] = b"ULMW";
pub const VERSION: u8 = 1;
pub const HEADER_LEN: u64 = 17;

/// Longest level a file may declare; keeps a corrupt header from requesting
/// an absurd allocation.
pub const MAX_FILE_LEVEL: u32 = 40;

pub fn payload_len(n: u32) -> u64 {
    (1u64 << n).div_ceil(8)
}

pub fn file_len(n: u32) -> u64 {
    HEADER_LEN + payload_len(n)
}

pub fn write_level<W: Write>(level: &LevelSet, mut out: W) -> std::io::Result<()> {
    out.write_all(MAGIC)?;
    out.write_all(&[VERSION])?;
    out.write_all(&level.length().to_le_bytes())?;
    out.write_all(&level.count().to_le_bytes())?;
    let len = payload_len(level.length()) as usize;
    let mut written = 0;
    for w in level.members().words() {
        let bytes = w.to_le_bytes();
        let take = (len - written).min(8);
        out.write_all(&bytes[..take])?;
        written += take;
    }
    debug_assert_eq!(written, len);
    Ok(())
}

pub fn read_level<R: Read>(mut input: R) -> Result<LevelSet> {
    let mut header = [0u8; HEADER_LEN as usize];
    read_exact(&mut input, &mut header, "header")?;
    if &header[0..4] != MAGIC {
        return Err(UlamError::Format(format!("bad magic {:?}", &header[0..4])));
    }
    if header[4] != VERSION {
        return Err(UlamError::Format(format!(
            "unsupported version {}",
            header[4]
        )));
    }
    let n = u32::from_le_bytes(header[5..9].try_into().unwrap());
    let count = u64::from_le_bytes(header[9..17].try_into().unwrap());
    if n == 0 || n > MAX_FILE_LEVEL.min(MAX_WORD_LENGTH) {
        return Err(UlamError::Format(format!("unsupported level length {n}")));
    }
    let len = payload_len(n) as usize;
    let mut payload = vec![0u8; len];
    read_exact(&mut input, &mut payload, "payload")?;
    let mut extra = [0u8; 1];
    match input.read(&mut extra) {
        Ok(0) => {}
        Ok(_) => return Err(UlamError::Corruption("trailing bytes after payload".into())),
        Err(e) => return Err(UlamError::Corruption(format!("reading past payload: {e}"))),
    }
    let words = payload
        .chunks(8)
        .map(|chunk| {
            let mut buf = [0u8; 8];
            buf[..chunk.len()].copy_from_slice(chunk);
            u64::from_le_bytes(buf)
        })
        .collect();
    let bits_len = 1u64 << n;
    if n < 3 {
        let used = (1u8 << bits_len) - 1;
        if payload[0] & !used != 0 {
            return Err(UlamError::Corruption("padding bits set in payload".into()));
        }
    }
    let level = LevelSet::from_bitset(n, Bitset::from_words(words, bits_len))?;
    if level.count() != count {
        return Err(UlamError::Corruption(format!(
            "header count {count} but payload has {} members",
            level.count()
        )));
    }
    Ok(level)
}

fn read_exact<R: Read>(input: &mut R, buf: &mut [u8], what: &str) -> Result<()> {
    input.read_exact(buf).map_err(|e| match e.kind() {
        std::io::ErrorKind::UnexpectedEof => UlamError::Corruption(format!("truncated {what}")),
        _ => UlamError::Corruption(format!("reading {what}: {e}")),
    })
}

pub fn save_level(level: &LevelSet, path: impl AsRef<Path>) -> Result<()> {
    let path = path.as_ref();
    let file = File::create(path).map_err(|e| UlamError::io(path, e))?;
    let mut out = BufWriter::new(file);
    write_level(level, &mut out).map_err(|e| UlamError::io(path, e))?;
    out.flush().map_err(|e| UlamError::io(path, e))
}

pub fn load_level(path: impl AsRef<Path>) -> Result<LevelSet> {
    let path = path.as_ref();
    let file = File::open(path).map_err(|e| UlamError::io(path, e))?;
    let expected = file.metadata().map_err(|e| UlamError::io(path, e))?.len();
    let level = read_level(BufReader::new(file))?;
    debug_assert_eq!(expected, file_len(level.length()));
    Ok(level)
}

/// Conventional file name for level `n` inside a store directory.
pub fn level_file_name(n: u32) -> String {
    format!("level_{n:02}.ulmw")
}

/// Loads levels `1, 2, ...` from `dir` until the first missing file.
pub fn load_store(dir: impl AsRef<Path>) -> Result<Vec<LevelSet>> {
    let dir = dir.as_ref();
    let mut levels = Vec::new();
    for n in 1.. {
        let path = dir.join(level_file_name(n));
        if !path.exists() {
            break;
        }
        let level = load_level(&path)?;
        if level.length() != n {
            return Err(UlamError::Corruption(format!(
                "{} holds level {}",
                path.display(),
                level.length()
            )));
        }
        levels.push(level);
    }
    Ok(levels)
}

pub fn save_store<'a>(
    levels: impl IntoIterator<Item = &'a LevelSet>,
    dir: impl AsRef<Path>,
) -> Result<()> {
    let dir = dir.as_ref();
    std::fs::create_dir_all(dir).map_err(|e| UlamError::io(dir, e))?;
    for level in levels {
        save_level(level, dir.join(level_file_name(level.length())))?;
    }
    Ok(())
}
