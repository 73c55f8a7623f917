//! Online parsing with a fixed-depth prefix tree.
//!
//! A message is routed first by its token count, then by its leading tokens
//! (tokens containing digits share a single `<*>` branch), down to a leaf that
//! holds a short list of clusters. The message joins the cluster whose
//! template has the highest positional similarity, provided that similarity
//! reaches the threshold; otherwise it starts a new cluster. Joining a cluster
//! replaces every disagreeing position of the cluster template with `<*>`.
//! When two clusters of a leaf end up with the same template they merge.
//!
//! The decision for message `i` depends only on messages `1..=i`; [`TreeParser::add`]
//! returns that decision. A batch [`TreeParser::parse`] reports each record under
//! its cluster's final template.

use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use super::Masker;
use crate::corpus::{Dataset, Template, WILDCARD};
use crate::error::{Error, Result};
use crate::metrics::ParseResult;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct TreeConfig {
    /// Tree depth counting the root and the token-count layer; at least 3.
    pub depth: usize,
    pub similarity_threshold: f64,
    pub max_children: usize,
    /// Regexes whose matches are replaced by `<*>` before tokenizing.
    pub masks: Vec<String>,
}

impl Default for TreeConfig {
    fn default() -> Self {
        TreeConfig {
            depth: 4,
            similarity_threshold: 0.4,
            max_children: 100,
            masks: Vec::new(),
        }
    }
}

impl TreeConfig {
    pub fn validate(&self) -> Result<()> {
        if self.depth < 3 {
            return Err(Error::Config(format!("tree depth must be >= 3, got {}", self.depth)));
        }
        if !(self.similarity_threshold > 0.0 && self.similarity_threshold < 1.0) {
            return Err(Error::Config(format!(
                "similarity threshold must be in (0, 1), got {}",
                self.similarity_threshold
            )));
        }
        if self.max_children == 0 {
            return Err(Error::Config("max_children must be positive".into()));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct ClusterId(pub usize);

#[derive(Debug, Clone)]
struct Cluster {
    template: Vec<String>,
    size: usize,
}

#[derive(Debug, Default)]
struct Node {
    children: HashMap<String, Node>,
    clusters: Vec<usize>,
}

#[derive(Debug)]
pub struct TreeParser {
    cfg: TreeConfig,
    masker: Masker,
    roots: HashMap<usize, Node>,
    clusters: Vec<Cluster>,
    /// Union-find parent links; a cluster merged away points at its survivor.
    parent: Vec<usize>,
}

fn has_digit(token: &str) -> bool {
    token.bytes().any(|b| b.is_ascii_digit())
}

impl TreeParser {
    pub fn new(cfg: TreeConfig) -> Result<Self> {
        cfg.validate()?;
        let masker = Masker::new(&cfg.masks)?;
        Ok(TreeParser {
            cfg,
            masker,
            roots: HashMap::new(),
            clusters: Vec::new(),
            parent: Vec::new(),
        })
    }

    fn routing_depth(&self, token_count: usize) -> usize {
        (self.cfg.depth - 3).min(token_count.saturating_sub(1))
    }

    /// Processes one message and returns the cluster it joined or created.
    pub fn add(&mut self, content: &str) -> Result<ClusterId> {
        let tokens = self.masker.tokens(content);
        if tokens.is_empty() {
            return Err(Error::InvalidTemplate {
                text: content.to_string(),
                reason: "message has no tokens",
            });
        }
        let best = self.find_leaf(&tokens).and_then(|leaf| self.best_match(leaf, &tokens));
        match best {
            Some(id) => {
                let cluster = &mut self.clusters[id];
                for (slot, token) in cluster.template.iter_mut().zip(&tokens) {
                    if slot != token {
                        *slot = WILDCARD.to_string();
                    }
                }
                cluster.size += 1;
                self.merge_duplicates(id, &tokens);
                Ok(ClusterId(id))
            }
            None => {
                let id = self.clusters.len();
                self.clusters.push(Cluster {
                    template: tokens.clone(),
                    size: 1,
                });
                self.parent.push(id);
                self.insert_leaf(&tokens).clusters.push(id);
                Ok(ClusterId(id))
            }
        }
    }

    fn find_leaf(&self, tokens: &[String]) -> Option<&Node> {
        let mut node = self.roots.get(&tokens.len())?;
        for token in &tokens[..self.routing_depth(tokens.len())] {
            node = node
                .children
                .get(token)
                .or_else(|| node.children.get(WILDCARD))?;
        }
        Some(node)
    }

    fn insert_leaf(&mut self, tokens: &[String]) -> &mut Node {
        let depth = self.routing_depth(tokens.len());
        let max_children = self.cfg.max_children;
        let mut node = self.roots.entry(tokens.len()).or_default();
        for token in &tokens[..depth] {
            let key = if node.children.contains_key(token) {
                token.clone()
            } else if has_digit(token) {
                WILDCARD.to_string()
            } else if node.children.contains_key(WILDCARD) {
                if node.children.len() < max_children {
                    token.clone()
                } else {
                    WILDCARD.to_string()
                }
            } else if node.children.len() + 1 < max_children {
                token.clone()
            } else {
                WILDCARD.to_string()
            };
            node = node.children.entry(key).or_default();
        }
        node
    }

    /// Most similar cluster of a leaf, if it reaches the threshold. Ties go to
    /// the template with more wildcards, then to the older cluster.
    fn best_match(&self, leaf: &Node, tokens: &[String]) -> Option<usize> {
        let mut best: Option<(f64, usize, usize)> = None;
        for &id in &leaf.clusters {
            let template = &self.clusters[id].template;
            let mut same = 0usize;
            let mut params = 0usize;
            for (t, tok) in template.iter().zip(tokens) {
                if t == WILDCARD {
                    params += 1;
                } else if t == tok {
                    same += 1;
                }
            }
            let sim = same as f64 / tokens.len() as f64;
            let better = match best {
                None => true,
                Some((s, p, _)) => sim > s || (sim == s && params > p),
            };
            if better {
                best = Some((sim, params, id));
            }
        }
        best.filter(|(sim, _, _)| *sim >= self.cfg.similarity_threshold)
            .map(|(_, _, id)| id)
    }

    fn merge_duplicates(&mut self, id: usize, tokens: &[String]) {
        let template = self.clusters[id].template.clone();
        let depth = self.routing_depth(tokens.len());
        let Some(leaf) = self.leaf_of(tokens, depth) else {
            return;
        };
        let twins: Vec<usize> = leaf
            .clusters
            .iter()
            .copied()
            .filter(|&o| o != id && self.clusters[o].template == template)
            .collect();
        if twins.is_empty() {
            return;
        }
        let survivor = twins.iter().copied().chain([id]).min().unwrap_or(id);
        let mut absorbed = 0;
        for o in twins.into_iter().chain([id]).filter(|&o| o != survivor) {
            self.parent[o] = survivor;
            absorbed += self.clusters[o].size;
        }
        self.clusters[survivor].size += absorbed;
        let parent = self.parent.clone();
        if let Some(leaf) = self.leaf_of_mut(tokens, depth) {
            leaf.clusters.retain(|&c| parent[c] == c);
        }
    }

    fn leaf_of(&self, tokens: &[String], depth: usize) -> Option<&Node> {
        let mut node = self.roots.get(&tokens.len())?;
        for token in &tokens[..depth] {
            node = node
                .children
                .get(token)
                .or_else(|| node.children.get(WILDCARD))?;
        }
        Some(node)
    }

    fn leaf_of_mut(&mut self, tokens: &[String], depth: usize) -> Option<&mut Node> {
        let mut node = self.roots.get_mut(&tokens.len())?;
        for token in &tokens[..depth] {
            let key = if node.children.contains_key(token) {
                token.as_str()
            } else {
                WILDCARD
            };
            node = node.children.get_mut(key)?;
        }
        Some(node)
    }

    fn find(&self, mut id: usize) -> usize {
        while self.parent[id] != id {
            id = self.parent[id];
        }
        id
    }

    /// Current template of a cluster, following merges.
    pub fn template(&self, id: ClusterId) -> Result<Template> {
        Template::from_tokens(&self.clusters[self.find(id.0)].template)
    }

    pub fn cluster_count(&self) -> usize {
        (0..self.clusters.len()).filter(|&i| self.parent[i] == i).count()
    }

    /// Feeds every record, then labels each with its cluster's final template.
    pub fn parse(&mut self, ds: &Dataset) -> Result<ParseResult> {
        let ids = ds
            .contents()
            .map(|c| self.add(c))
            .collect::<Result<Vec<_>>>()?;
        let mut cache: HashMap<usize, Template> = HashMap::new();
        let mut templates = Vec::with_capacity(ids.len());
        for id in ids {
            let root = self.find(id.0);
            let t = match cache.get(&root) {
                Some(t) => t.clone(),
                None => {
                    let t = self.template(id)?;
                    cache.insert(root, t.clone());
                    t
                }
            };
            templates.push(t);
        }
        Ok(ParseResult::new(templates))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run(lines: &[&str], cfg: TreeConfig) -> Vec<String> {
        let ds = Dataset::from_lines("d", lines.iter().copied()).unwrap();
        let mut p = TreeParser::new(cfg).unwrap();
        p.parse(&ds)
            .unwrap()
            .templates
            .into_iter()
            .map(|t| t.as_str().to_string())
            .collect()
    }

    #[test]
    fn hand_simulated_routing() {
        let cfg = TreeConfig {
            similarity_threshold: 0.5,
            ..TreeConfig::default()
        };
        // "a b d" meets "a b c" in the leaf (len 3, first token "a"): 2/3 >= 0.5.
        // "x y" lives under token count 2.
        assert_eq!(run(&["a b c", "a b d", "x y"], cfg), vec!["a b <*>", "a b <*>", "x y"]);
    }

    #[test]
    fn below_threshold_splits() {
        let cfg = TreeConfig {
            similarity_threshold: 0.7,
            ..TreeConfig::default()
        };
        assert_eq!(run(&["a b c", "a x y"], cfg), vec!["a b c", "a x y"]);
    }

    #[test]
    fn digit_tokens_share_a_branch() {
        assert_eq!(
            run(&["42 files copied", "17 files copied"], TreeConfig::default()),
            vec!["<*> files copied", "<*> files copied"]
        );
    }

    #[test]
    fn decisions_are_online() {
        let lines = ["open a 1", "open b 2", "close c", "open a 3", "close d"];
        let mut full = TreeParser::new(TreeConfig::default()).unwrap();
        let all: Vec<ClusterId> = lines.iter().map(|l| full.add(l).unwrap()).collect();
        let mut prefix = TreeParser::new(TreeConfig::default()).unwrap();
        let head: Vec<ClusterId> = lines[..3].iter().map(|l| prefix.add(l).unwrap()).collect();
        assert_eq!(head, all[..3]);
    }

    #[test]
    fn identical_templates_merge() {
        let mut p = TreeParser::new(TreeConfig::default()).unwrap();
        let a = p.add("k a b c d").unwrap();
        let b = p.add("k x y z w").unwrap(); // 1/5 < 0.4: second cluster, same leaf
        assert_ne!(a, b);
        let generalized: Vec<String> =
            ["k", "<*>", "<*>", "z", "w"].into_iter().map(String::from).collect();
        p.clusters[a.0].template = generalized.clone();
        p.clusters[b.0].template = generalized;
        let tokens: Vec<String> = "k x y z w".split(' ').map(String::from).collect();
        p.merge_duplicates(b.0, &tokens);
        assert_eq!(p.cluster_count(), 1);
        assert_eq!(p.template(b).unwrap().as_str(), "k <*> <*> z w");
        assert_eq!(p.clusters[a.0].size, 2);
        assert_eq!(p.find_leaf(&tokens).unwrap().clusters, vec![a.0]);
        // Later lines land in the survivor.
        assert_eq!(p.add("k m n z w").unwrap(), a);
    }

    #[test]
    fn max_children_overflow_routes_to_wildcard() {
        let cfg = TreeConfig {
            max_children: 2,
            ..TreeConfig::default()
        };
        let mut p = TreeParser::new(cfg).unwrap();
        for l in ["alpha x", "beta x", "gamma x"] {
            p.add(l).unwrap();
        }
        // alpha gets its own branch; beta fills the last slot with `<*>`;
        // gamma follows `<*>` and joins beta's cluster.
        assert_eq!(p.cluster_count(), 2);
    }

    #[test]
    fn token_counts_are_preserved() {
        let lines = ["a b c d", "a b c e", "z", "m n", "m o"];
        for (l, t) in lines.iter().zip(run(&lines, TreeConfig::default())) {
            assert_eq!(l.split_whitespace().count(), t.split(' ').count());
        }
    }

    #[test]
    fn rejects_bad_config() {
        assert!(TreeParser::new(TreeConfig { depth: 2, ..TreeConfig::default() }).is_err());
        assert!(TreeParser::new(TreeConfig {
            similarity_threshold: 1.0,
            ..TreeConfig::default()
        })
        .is_err());
    }
}
