//! MNIST IDX image-file parsing: big-endian 32-bit magic 2051, image count,
//! rows, cols, then row-major unsigned bytes. Pixels scale to [0, 1] by 255.

use std::fs;
use std::path::Path;

use crate::encoding::ImageGrid;
use crate::error::{Error, Result};

pub const IMAGE_MAGIC: u32 = 2051;
pub const LABEL_MAGIC: u32 = 2049;

#[derive(Debug, Clone)]
pub struct MnistSet {
    pub images: Vec<ImageGrid>,
}

impl MnistSet {
    pub fn count(&self) -> usize {
        self.images.len()
    }
}

fn data_err(path: &Path, reason: impl Into<String>) -> Error {
    Error::Data {
        path: path.display().to_string(),
        reason: reason.into(),
    }
}

fn read_be_u32(bytes: &[u8], offset: usize) -> u32 {
    u32::from_be_bytes([
        bytes[offset],
        bytes[offset + 1],
        bytes[offset + 2],
        bytes[offset + 3],
    ])
}

/// Load the first `count` images of an IDX image file.
pub fn load_mnist(path: &Path, count: usize) -> Result<MnistSet> {
    let bytes = fs::read(path).map_err(|e| data_err(path, format!("cannot read file: {e}")))?;
    if bytes.len() < 16 {
        return Err(data_err(path, "truncated header"));
    }
    let magic = read_be_u32(&bytes, 0);
    if magic == LABEL_MAGIC {
        return Err(data_err(path, "not an image file (label magic 2049)"));
    }
    if magic != IMAGE_MAGIC {
        return Err(data_err(path, format!("bad magic {magic}, expected 2051")));
    }
    let available = read_be_u32(&bytes, 4) as usize;
    let rows = read_be_u32(&bytes, 8) as usize;
    let cols = read_be_u32(&bytes, 12) as usize;
    if count > available {
        return Err(data_err(
            path,
            format!("requested {count} images but file holds {available}"),
        ));
    }
    let pixels_per_image = rows * cols;
    let needed = 16 + count * pixels_per_image;
    if bytes.len() < needed {
        return Err(data_err(
            path,
            format!("truncated data: need {needed} bytes, have {}", bytes.len()),
        ));
    }
    let images = (0..count)
        .map(|i| {
            let start = 16 + i * pixels_per_image;
            ImageGrid::from_bytes(rows, cols, &bytes[start..start + pixels_per_image])
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(MnistSet { images })
}

/// Write images in IDX format. Pixels are quantized back to bytes, so this
/// round-trips exactly for images that came from bytes.
pub fn write_idx_images(path: &Path, images: &[ImageGrid]) -> Result<()> {
    let (rows, cols) = match images.first() {
        Some(img) => (img.height(), img.width()),
        None => (0, 0),
    };
    let mut bytes = Vec::with_capacity(16 + images.len() * rows * cols);
    bytes.extend_from_slice(&IMAGE_MAGIC.to_be_bytes());
    bytes.extend_from_slice(&(images.len() as u32).to_be_bytes());
    bytes.extend_from_slice(&(rows as u32).to_be_bytes());
    bytes.extend_from_slice(&(cols as u32).to_be_bytes());
    for img in images {
        for &p in img.pixels() {
            bytes.push((p * 255.0).round() as u8);
        }
    }
    fs::write(path, bytes)?;
    Ok(())
}
