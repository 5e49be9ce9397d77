//! Interpolated Kneser-Ney estimation with one absolute discount per order.
//!
//! Highest-order n-grams and n-grams starting with `<s>` keep their raw
//! counts; every other n-gram is counted by its number of distinct left
//! extensions (continuation count). With `a(.)` the adjusted count, `D` the
//! order's discount and `P'` the next-lower order's distribution:
//!
//! ```text
//! P(w | h) = (a(h w) - D) / S(h) + gamma(h) * P'(w | h[1..])   for seen h w
//! gamma(h) = D * N1+(h .) / S(h),   S(h) = sum_w a(h w)
//! ```
//!
//! The recursion bottoms out in the uniform distribution over every token
//! except `<s>`, which is where `<unk>` gets its mass. `gamma(h)` is stored as
//! the backoff weight of `h`, so backoff queries reproduce the interpolated
//! distribution.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::string::ToString;
use alloc::vec;
use alloc::vec::Vec;

// unused when std is in the build graph and its inherent float methods win
#[allow(unused_imports)]
use num_traits::Float;

use super::{Gram, NGramEntry, NGramError, NGramModel, BOS, EOS, LOG10_ZERO, MAX_ORDER, UNK};

/// Discount used when an order has no singletons or no doubletons.
pub const FALLBACK_DISCOUNT: f64 = 0.75;

const BOS_ID: u32 = 0;
const EOS_ID: u32 = 1;
const UNK_ID: u32 = 2;

fn discount(counts: &BTreeMap<Gram, u64>) -> f64 {
    let n1 = counts.values().filter(|&&c| c == 1).count() as f64;
    let n2 = counts.values().filter(|&&c| c == 2).count() as f64;
    if n1 == 0.0 || n2 == 0.0 {
        FALLBACK_DISCOUNT
    } else {
        n1 / (n1 + 2.0 * n2)
    }
}

/// Trains an `order`-gram model on whitespace-tokenized sentences. Blank
/// lines are skipped; the markers `<s>` and `</s>` inside text are read as
/// `<unk>`.
pub fn train_lm<S: AsRef<str>>(sentences: &[S], order: usize) -> Result<NGramModel, NGramError> {
    if !(1..=MAX_ORDER).contains(&order) {
        return Err(NGramError::BadOrder(order));
    }
    let tokenized: Vec<Vec<&str>> = sentences
        .iter()
        .map(|s| s.as_ref().split_whitespace().collect::<Vec<_>>())
        .filter(|t| !t.is_empty())
        .collect();
    if tokenized.is_empty() {
        return Err(NGramError::EmptyCorpus);
    }

    let words: BTreeSet<&str> = tokenized
        .iter()
        .flatten()
        .copied()
        .filter(|w| ![BOS, EOS, UNK].contains(w))
        .collect();
    let mut vocab = vec![BOS.to_string(), EOS.to_string(), UNK.to_string()];
    vocab.extend(words.iter().map(|w| w.to_string()));
    let ids: BTreeMap<alloc::string::String, u32> = vocab
        .iter()
        .enumerate()
        .map(|(i, w)| (w.clone(), i as u32))
        .collect();
    let id_of = |w: &str| match w {
        BOS | EOS => UNK_ID,
        _ => ids[w],
    };

    // raw counts, raw[k - 1] for k-grams
    let mut raw: Vec<BTreeMap<Gram, u64>> = vec![BTreeMap::new(); order];
    for sentence in &tokenized {
        let mut padded = Vec::with_capacity(sentence.len() + 2);
        padded.push(BOS_ID);
        padded.extend(sentence.iter().map(|w| id_of(w)));
        padded.push(EOS_ID);
        for k in 1..=order {
            for window in padded.windows(k) {
                *raw[k - 1].entry(window.to_vec()).or_insert(0) += 1;
            }
        }
    }

    // adjusted counts; <s> as a unigram is never a prediction target
    let mut adjusted: Vec<BTreeMap<Gram, u64>> = vec![BTreeMap::new(); order];
    adjusted[order - 1] = raw[order - 1].clone();
    if order == 1 {
        adjusted[0].remove(&vec![BOS_ID]);
    }
    for k in (1..order).rev() {
        let mut continuation: BTreeMap<Gram, u64> = BTreeMap::new();
        for longer in raw[k].keys() {
            *continuation.entry(longer[1..].to_vec()).or_insert(0) += 1;
        }
        let level = &mut adjusted[k - 1];
        for (gram, &count) in &raw[k - 1] {
            if gram[0] == BOS_ID {
                if k > 1 {
                    level.insert(gram.clone(), count);
                }
            } else {
                level.insert(gram.clone(), continuation.get(gram).copied().unwrap_or(0));
            }
        }
    }

    let discounts: Vec<f64> = adjusted.iter().map(discount).collect();

    // interpolated probabilities in natural units, order by order
    let targets = vocab.len() - 1;
    let base = 1.0 / targets as f64;
    let mut probs: Vec<BTreeMap<Gram, f64>> = Vec::with_capacity(order);
    let mut gammas: Vec<BTreeMap<Gram, f64>> = vec![BTreeMap::new(); order];

    {
        let d = discounts[0];
        let total: u64 = adjusted[0].values().sum();
        let types = adjusted[0].values().filter(|&&c| c > 0).count() as f64;
        let gamma = d * types / total as f64;
        let mut level = BTreeMap::new();
        for id in 1..vocab.len() as u32 {
            let a = adjusted[0].get(&vec![id]).copied().unwrap_or(0) as f64;
            level.insert(vec![id], (a - d).max(0.0) / total as f64 + gamma * base);
        }
        probs.push(level);
    }

    for k in 2..=order {
        let d = discounts[k - 1];
        let mut totals: BTreeMap<&[u32], (u64, u64)> = BTreeMap::new();
        for (gram, &a) in &adjusted[k - 1] {
            let t = totals.entry(&gram[..k - 1]).or_insert((0, 0));
            t.0 += a;
            t.1 += 1;
        }
        let mut level = BTreeMap::new();
        for (gram, &a) in &adjusted[k - 1] {
            let (sum, types) = totals[&gram[..k - 1]];
            let gamma = d * types as f64 / sum as f64;
            let lower = probs[k - 2][&gram[1..]];
            level.insert(gram.clone(), (a as f64 - d) / sum as f64 + gamma * lower);
        }
        for (ctx, (sum, types)) in totals {
            gammas[k - 2].insert(ctx.to_vec(), d * types as f64 / sum as f64);
        }
        probs.push(level);
    }

    let mut grams: Vec<BTreeMap<Gram, NGramEntry>> = Vec::with_capacity(order);
    for k in 1..=order {
        let mut level = BTreeMap::new();
        let backoff_for = |gram: &Gram| {
            if k == order {
                None
            } else {
                Some(gammas[k - 1].get(gram).map_or(0.0, |g| g.log10()))
            }
        };
        if k == 1 {
            let bos = vec![BOS_ID];
            level.insert(
                bos.clone(),
                NGramEntry {
                    log10_prob: LOG10_ZERO,
                    log10_backoff: backoff_for(&bos),
                },
            );
        }
        for (gram, p) in &probs[k - 1] {
            level.insert(
                gram.clone(),
                NGramEntry {
                    log10_prob: p.log10(),
                    log10_backoff: backoff_for(gram),
                },
            );
        }
        grams.push(level);
    }

    Ok(NGramModel {
        order,
        vocab,
        ids,
        grams,
        discounts,
    })
}
