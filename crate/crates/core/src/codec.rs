//! On-disk format, decompression and bounded-hop extraction.
//!
//! Layout, integers little-endian:
//!
//! ```text
//! "BATLZ" | version u8 = 1 | n u64 | c u32 | z u64 | sigma u16 | decode_map [u8; sigma]
//! z records: LEB128 len | LEB128 source if len > 0 | literal byte
//! ```
//!
//! Sources are 1-based text positions. `c = 0xFFFFFFFF` marks an unbounded
//! parse. `decode_map[0]` is the sentinel's slot and holds 0x00, as does the
//! last record's literal.

use std::io::{Read, Write};

use crate::parse::{Algo, Parse, Phrase};
use crate::text::{Text, SENTINEL};
use crate::{Error, Result};

pub const MAGIC: &[u8; 5] = b"BATLZ";
pub const VERSION: u8 = 1;
/// Bytes before the decode map.
pub const FIXED_HEADER: usize = 5 + 1 + 8 + 4 + 8 + 2;

/// A parse in stored form, with the phrase-start index rebuilt on load.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CompressedFile {
    n: usize,
    c: u32,
    decode_map: Vec<u8>,
    phrases: Vec<Phrase>,
    starts: Vec<usize>,
}

/// Symbols read by [`CompressedFile::extract`] and the hops spent on each.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Extraction {
    pub bytes: Vec<u8>,
    pub hops: Vec<u32>,
}

fn put_varint(out: &mut Vec<u8>, mut v: u64) {
    loop {
        let byte = (v & 0x7f) as u8;
        v >>= 7;
        if v == 0 {
            out.push(byte);
            return;
        }
        out.push(byte | 0x80);
    }
}

struct Cursor<'a> {
    buf: &'a [u8],
    pos: usize,
}

impl<'a> Cursor<'a> {
    fn take(&mut self, k: usize) -> Result<&'a [u8]> {
        if self.buf.len() - self.pos < k {
            return Err(Error::Format(format!("truncated at byte {}", self.buf.len())));
        }
        let s = &self.buf[self.pos..self.pos + k];
        self.pos += k;
        Ok(s)
    }

    fn u8(&mut self) -> Result<u8> {
        Ok(self.take(1)?[0])
    }

    fn le<const K: usize>(&mut self) -> Result<[u8; K]> {
        Ok(self.take(K)?.try_into().unwrap())
    }

    /// Minimal-length unsigned LEB128, so that re-encoding is byte-identical.
    fn varint(&mut self) -> Result<u64> {
        let start = self.pos;
        let mut v = 0u64;
        for shift in (0..64).step_by(7) {
            let byte = self.u8()?;
            let bits = (byte & 0x7f) as u64;
            if shift == 63 && bits > 1 {
                return Err(Error::Format(format!("varint overflow at byte {start}")));
            }
            v |= bits << shift;
            if byte & 0x80 == 0 {
                if byte == 0 && shift > 0 {
                    return Err(Error::Format(format!("overlong varint at byte {start}")));
                }
                return Ok(v);
            }
        }
        Err(Error::Format(format!("varint overflow at byte {start}")))
    }
}

impl CompressedFile {
    /// Wraps a parse of `text`. The parse is trusted; see [`Parse::validate`].
    pub fn new(parse: &Parse, text: &Text) -> CompressedFile {
        let mut file = CompressedFile {
            n: parse.n,
            c: parse.c,
            decode_map: text.decode_map().to_vec(),
            phrases: parse.phrases.clone(),
            starts: Vec::new(),
        };
        file.starts = parse.starts();
        file
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn c(&self) -> u32 {
        self.c
    }

    pub fn sigma(&self) -> usize {
        self.decode_map.len()
    }

    pub fn decode_map(&self) -> &[u8] {
        &self.decode_map
    }

    pub fn phrases(&self) -> &[Phrase] {
        &self.phrases
    }

    pub fn starts(&self) -> &[usize] {
        &self.starts
    }

    /// Number of phrases.
    pub fn z(&self) -> usize {
        self.phrases.len()
    }

    /// The stored phrases as a parse tagged with `algo`.
    pub fn to_parse(&self, algo: Algo) -> Parse {
        Parse {
            phrases: self.phrases.clone(),
            n: self.n,
            c: self.c,
            algo,
        }
    }

    pub fn to_bytes(&self) -> Vec<u8> {
        let mut out = Vec::with_capacity(FIXED_HEADER + self.decode_map.len() + 4 * self.phrases.len());
        out.extend_from_slice(MAGIC);
        out.push(VERSION);
        out.extend_from_slice(&(self.n as u64).to_le_bytes());
        out.extend_from_slice(&self.c.to_le_bytes());
        out.extend_from_slice(&(self.phrases.len() as u64).to_le_bytes());
        out.extend_from_slice(&(self.decode_map.len() as u16).to_le_bytes());
        out.extend_from_slice(&self.decode_map);
        for p in &self.phrases {
            put_varint(&mut out, p.len as u64);
            if let Some(s) = p.source {
                put_varint(&mut out, s as u64);
            }
            out.push(self.decode_map[p.literal as usize]);
        }
        out
    }

    pub fn write_to(&self, mut sink: impl Write) -> Result<()> {
        sink.write_all(&self.to_bytes())?;
        Ok(())
    }

    pub fn read_from(mut source: impl Read) -> Result<CompressedFile> {
        let mut buf = Vec::new();
        source.read_to_end(&mut buf)?;
        CompressedFile::from_bytes(&buf)
    }

    /// Parses and structurally checks a file: every source lies left of its
    /// phrase, the phrases cover exactly `n` symbols and only the last
    /// literal is the sentinel.
    pub fn from_bytes(buf: &[u8]) -> Result<CompressedFile> {
        let mut cur = Cursor { buf, pos: 0 };
        if cur.take(5)? != MAGIC {
            return Err(Error::Format("bad magic".into()));
        }
        let version = cur.u8()?;
        if version != VERSION {
            return Err(Error::Format(format!("unsupported version {version}")));
        }
        let n = u64::from_le_bytes(cur.le()?);
        let c = u32::from_le_bytes(cur.le()?);
        let z = u64::from_le_bytes(cur.le()?);
        let sigma = u16::from_le_bytes(cur.le()?) as usize;
        if n == 0 || n > crate::text::MAX_LEN as u64 {
            return Err(Error::Format(format!("text length {n} out of range")));
        }
        if z == 0 || z > n {
            return Err(Error::Format(format!("phrase count {z} out of range")));
        }
        if sigma == 0 || sigma > 257 {
            return Err(Error::Format(format!("alphabet size {sigma} out of range")));
        }
        let n = n as usize;
        let decode_map = cur.take(sigma)?.to_vec();
        if decode_map[0] != 0 || decode_map[1..].windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::Format("decode map is not canonical".into()));
        }
        let mut encode = [u16::MAX; 256];
        for (code, &b) in decode_map.iter().enumerate().skip(1) {
            encode[b as usize] = code as u16;
        }

        let mut phrases = Vec::with_capacity(z as usize);
        let mut starts = Vec::with_capacity(z as usize);
        let mut i = 1usize;
        for k in 0..z {
            let len = cur.varint()?;
            if len >= (n - i + 1) as u64 {
                return Err(Error::Corrupt {
                    pos: i,
                    reason: format!("copy length {len} runs past the end"),
                });
            }
            let len = len as usize;
            let source = if len > 0 {
                let s = cur.varint()?;
                if s == 0 || s >= i as u64 {
                    return Err(Error::Corrupt {
                        pos: i,
                        reason: format!("source {s} is not left of {i}"),
                    });
                }
                Some(s as usize)
            } else {
                None
            };
            let byte = cur.u8()?;
            let last = k + 1 == z;
            let literal = if last {
                if byte != 0 {
                    return Err(Error::Corrupt {
                        pos: i + len,
                        reason: "final literal is not the sentinel".into(),
                    });
                }
                SENTINEL
            } else {
                match encode[byte as usize] {
                    u16::MAX => {
                        return Err(Error::Corrupt {
                            pos: i + len,
                            reason: format!("literal byte {byte:#04x} not in the alphabet"),
                        })
                    }
                    code => code,
                }
            };
            starts.push(i);
            phrases.push(Phrase { source, len, literal });
            i += len + 1;
        }
        if i != n + 1 {
            return Err(Error::Corrupt {
                pos: i.min(n),
                reason: format!("phrases cover {} symbols, header says {n}", i - 1),
            });
        }
        if cur.pos != buf.len() {
            return Err(Error::Format(format!("{} trailing bytes", buf.len() - cur.pos)));
        }
        Ok(CompressedFile {
            n,
            c,
            decode_map,
            phrases,
            starts,
        })
    }

    /// All codes `T[1..=n]`, copying left to right.
    pub fn decode_codes(&self) -> Vec<u16> {
        let mut t = Vec::with_capacity(self.n + 1);
        t.push(0);
        for p in &self.phrases {
            if let Some(s) = p.source {
                for l in 0..p.len {
                    let v = t[s + l];
                    t.push(v);
                }
            }
            t.push(p.literal);
        }
        t.remove(0);
        t
    }

    /// The original bytes.
    pub fn decompress(&self) -> Vec<u8> {
        let codes = self.decode_codes();
        codes[..self.n - 1]
            .iter()
            .map(|&c| self.decode_map[c as usize])
            .collect()
    }

    /// The text the file encodes, sentinel included.
    pub fn to_text(&self) -> Result<Text> {
        Text::from_codes(&self.decode_codes(), self.decode_map.clone())
    }

    /// Phrase index containing position `p`.
    fn phrase_of(&self, p: usize) -> usize {
        self.starts.partition_point(|&s| s <= p) - 1
    }

    /// Code at position `p` and the number of copy hops followed.
    pub fn access(&self, mut p: usize) -> Result<(u16, u32)> {
        if p == 0 || p > self.n {
            return Err(Error::PositionOutOfRange { pos: p, max: self.n });
        }
        let mut hops = 0;
        loop {
            let k = self.phrase_of(p);
            let (start, ph) = (self.starts[k], &self.phrases[k]);
            let off = p - start;
            if off == ph.len {
                return Ok((ph.literal, hops));
            }
            let s = ph.source.expect("copied position has a source");
            p = s + off % (start - s);
            hops += 1;
        }
    }

    /// Reads `len` symbols from position `i`, without decompressing the rest.
    /// The sentinel is not addressable.
    pub fn extract(&self, i: usize, len: usize) -> Result<Extraction> {
        let last = self.n - 1;
        if len > 0 && (i == 0 || i + len - 1 > last) {
            return Err(Error::PositionOutOfRange {
                pos: if i == 0 { 0 } else { i + len - 1 },
                max: last,
            });
        }
        let mut out = Extraction {
            bytes: Vec::with_capacity(len),
            hops: Vec::with_capacity(len),
        };
        for p in i..i + len {
            let (code, hops) = self.access(p)?;
            out.bytes.push(self.decode_map[code as usize]);
            out.hops.push(hops);
        }
        Ok(out)
    }
}
