/// Dimension of [`TrigramEmbedding`] vectors.
pub const EMBEDDING_DIM: usize = 64;

/// Maps text to a fixed-length vector. Implementations must be deterministic
/// and return unit-norm vectors.
pub trait EmbeddingProvider: Send + Sync {
    fn embed(&self, text: &str) -> Vec<f64>;
}

/// Lowercases, splits on anything that is not alphanumeric and drops the
/// articles "a", "an" and "the".
pub fn normalize_name(text: &str) -> Vec<String> {
    text.to_lowercase()
        .split(|c: char| !c.is_alphanumeric())
        .filter(|w| !w.is_empty() && !matches!(*w, "a" | "an" | "the"))
        .map(str::to_string)
        .collect()
}

/// Bag of hashed character trigrams. Each word is padded with one space on
/// either side; the last word, usually the head noun, counts twice.
#[derive(Debug, Clone, Copy, Default)]
pub struct TrigramEmbedding;

fn fnv1a(bytes: &[u8]) -> u64 {
    let mut h: u64 = 0xcbf29ce484222325;
    for b in bytes {
        h ^= u64::from(*b);
        h = h.wrapping_mul(0x100000001b3);
    }
    h
}

impl EmbeddingProvider for TrigramEmbedding {
    fn embed(&self, text: &str) -> Vec<f64> {
        let words = normalize_name(text);
        let mut v = vec![0.0; EMBEDDING_DIM];
        for (i, w) in words.iter().enumerate() {
            let weight = if i + 1 == words.len() { 2.0 } else { 1.0 };
            let padded: Vec<char> = format!(" {w} ").chars().collect();
            for tri in padded.windows(3) {
                let s: String = tri.iter().collect();
                v[(fnv1a(s.as_bytes()) % EMBEDDING_DIM as u64) as usize] += weight;
            }
        }
        let norm = v.iter().map(|x| x * x).sum::<f64>().sqrt();
        if norm > 0.0 {
            v.iter_mut().for_each(|x| *x /= norm);
        }
        v
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn articles_and_case_are_ignored() {
        assert_eq!(normalize_name("The Red  Apple!"), vec!["red", "apple"]);
        let e = TrigramEmbedding;
        assert_eq!(e.embed("an Apple"), e.embed("apple"));
    }

    #[test]
    fn unit_norm() {
        let e = TrigramEmbedding;
        for t in ["cube", "fresh apple", "futuristic white spaceship with large windows", "x"] {
            let n: f64 = e.embed(t).iter().map(|x| x * x).sum::<f64>().sqrt();
            assert!((n - 1.0).abs() < 1e-9, "{t}: {n}");
        }
    }

    #[test]
    fn fnv_reference_values() {
        // published FNV-1a 64-bit test vectors
        assert_eq!(fnv1a(b""), 0xcbf29ce484222325);
        assert_eq!(fnv1a(b"a"), 0xaf63dc4c8601ec8c);
        assert_eq!(fnv1a(b"foobar"), 0x85944171f73967e8);
    }
}
