//! Hash-consed store of canonical short partizan games.
//!
//! Every [`GameValue`] is a handle into a [`GameStore`]. Games are canonical
//! at construction (dominated options removed, reversible options bypassed),
//! so two handles are equal exactly when the games are equal.

use parking_lot::Mutex;
use rustc_hash::FxHashMap;

use super::{Comparison, DyadicRational, GameError, OutcomeClass};

/// Default ceiling on the number of interned nodes.
pub const DEFAULT_NODE_BUDGET: usize = 1 << 22;

/// Handle to a canonical game interned in a [`GameStore`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GameValue(u32);

impl GameValue {
    /// The zero game `{|}`; always the first node of every store.
    pub const ZERO: GameValue = GameValue(0);

    pub fn id(self) -> u32 {
        self.0
    }
}

#[derive(Debug)]
struct Node {
    left: Box<[GameValue]>,
    right: Box<[GameValue]>,
    number: Option<DyadicRational>,
}

type OptionKey = (Box<[GameValue]>, Box<[GameValue]>);

#[derive(Debug)]
pub(crate) struct Store {
    nodes: Vec<Node>,
    index: FxHashMap<OptionKey, GameValue>,
    numbers: FxHashMap<DyadicRational, GameValue>,
    leq_memo: FxHashMap<(GameValue, GameValue), bool>,
    add_memo: FxHashMap<(GameValue, GameValue), GameValue>,
    neg_memo: FxHashMap<GameValue, GameValue>,
    run_memo: FxHashMap<GameValue, (u32, u32)>,
    node_budget: usize,
}

/// Thread-safe interning store for canonical games.
///
/// Values are immutable once interned; insertion is serialized internally.
#[derive(Debug)]
pub struct GameStore {
    inner: Mutex<Store>,
}

impl Default for GameStore {
    fn default() -> Self {
        Self::new()
    }
}

impl GameStore {
    pub fn new() -> Self {
        Self::with_node_budget(DEFAULT_NODE_BUDGET)
    }

    pub fn with_node_budget(node_budget: usize) -> Self {
        let mut store = Store {
            nodes: Vec::new(),
            index: FxHashMap::default(),
            numbers: FxHashMap::default(),
            leq_memo: FxHashMap::default(),
            add_memo: FxHashMap::default(),
            neg_memo: FxHashMap::default(),
            run_memo: FxHashMap::default(),
            node_budget: node_budget.max(1),
        };
        let zero = store
            .intern(Vec::new(), Vec::new())
            .expect("budget admits the zero game");
        debug_assert_eq!(zero, GameValue::ZERO);
        Self {
            inner: Mutex::new(store),
        }
    }

    pub(crate) fn with_store<R>(&self, f: impl FnOnce(&mut Store) -> R) -> R {
        f(&mut self.inner.lock())
    }

    /// Number of interned nodes.
    pub fn len(&self) -> usize {
        self.inner.lock().nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// Number of distinct games reachable from `g`, itself included.
    pub fn subgames(&self, g: GameValue) -> usize {
        let store = self.inner.lock();
        let mut seen = rustc_hash::FxHashSet::default();
        let mut stack = vec![g];
        while let Some(x) = stack.pop() {
            if seen.insert(x) {
                let node = store.node(x);
                stack.extend(node.left.iter().chain(node.right.iter()));
            }
        }
        seen.len()
    }

    pub fn node_budget(&self) -> usize {
        self.inner.lock().node_budget
    }

    pub fn number(&self, x: DyadicRational) -> Result<GameValue, GameError> {
        self.inner.lock().number(x)
    }

    pub fn integer(&self, n: i64) -> Result<GameValue, GameError> {
        self.number(DyadicRational::integer(n))
    }

    /// Canonical form of `{left | right}` for already-canonical options.
    pub fn from_options(
        &self,
        left: Vec<GameValue>,
        right: Vec<GameValue>,
    ) -> Result<GameValue, GameError> {
        self.inner.lock().make(left, right)
    }

    pub fn left_options(&self, g: GameValue) -> Vec<GameValue> {
        self.inner.lock().node(g).left.to_vec()
    }

    pub fn right_options(&self, g: GameValue) -> Vec<GameValue> {
        self.inner.lock().node(g).right.to_vec()
    }

    /// The numeric value of `g`, when `g` is a number.
    pub fn as_number(&self, g: GameValue) -> Option<DyadicRational> {
        self.inner.lock().node(g).number
    }

    pub fn leq(&self, g: GameValue, h: GameValue) -> bool {
        self.inner.lock().leq(g, h)
    }

    pub fn compare(&self, g: GameValue, h: GameValue) -> Comparison {
        self.inner.lock().compare(g, h)
    }

    pub fn add(&self, g: GameValue, h: GameValue) -> Result<GameValue, GameError> {
        self.inner.lock().add(g, h)
    }

    pub fn sum(&self, games: impl IntoIterator<Item = GameValue>) -> Result<GameValue, GameError> {
        let mut store = self.inner.lock();
        games
            .into_iter()
            .try_fold(GameValue::ZERO, |acc, g| store.add(acc, g))
    }

    pub fn negate(&self, g: GameValue) -> Result<GameValue, GameError> {
        self.inner.lock().negate(g)
    }

    /// `n * g` as the `n`-fold sum `g + g + ... + g`.
    pub fn multiply_int(&self, n: u32, g: GameValue) -> Result<GameValue, GameError> {
        self.inner.lock().multiply_int(n, g)
    }

    /// Outcome class of `g`, with Vertical as Left.
    pub fn outcome(&self, g: GameValue) -> OutcomeClass {
        self.inner.lock().outcome(g)
    }

    /// Whether Left (Vertical) wins `g` moving first.
    pub fn left_wins_first(&self, g: GameValue) -> bool {
        !self.leq(g, GameValue::ZERO)
    }

    /// Whether Right (Horizontal) wins `g` moving first.
    pub fn right_wins_first(&self, g: GameValue) -> bool {
        !self.leq(GameValue::ZERO, g)
    }

    /// Longest run of consecutive Left moves and of consecutive Right moves
    /// available in `g` when the opponent never replies there.
    pub fn move_runs(&self, g: GameValue) -> (u32, u32) {
        self.inner.lock().runs(g)
    }
}

impl Store {
    fn node(&self, g: GameValue) -> &Node {
        &self.nodes[g.0 as usize]
    }

    pub(crate) fn left_of(&self, g: GameValue) -> &[GameValue] {
        &self.node(g).left
    }

    pub(crate) fn right_of(&self, g: GameValue) -> &[GameValue] {
        &self.node(g).right
    }

    pub(crate) fn number_of(&self, g: GameValue) -> Option<DyadicRational> {
        self.node(g).number
    }

    fn intern(
        &mut self,
        mut left: Vec<GameValue>,
        mut right: Vec<GameValue>,
    ) -> Result<GameValue, GameError> {
        left.sort_unstable();
        left.dedup();
        right.sort_unstable();
        right.dedup();
        let key: OptionKey = (left.into_boxed_slice(), right.into_boxed_slice());
        if let Some(&g) = self.index.get(&key) {
            return Ok(g);
        }
        if self.nodes.len() >= self.node_budget {
            return Err(GameError::NodeBudget {
                budget: self.node_budget,
            });
        }
        let number = self.number_tag(&key.0, &key.1);
        let g = GameValue(self.nodes.len() as u32);
        self.nodes.push(Node {
            left: key.0.clone(),
            right: key.1.clone(),
            number,
        });
        self.index.insert(key, g);
        if let Some(x) = number {
            self.numbers.entry(x).or_insert(g);
        }
        Ok(g)
    }

    /// Value of a canonical `{left | right}` whose options are all numbers
    /// with every left option below every right option.
    fn number_tag(&self, left: &[GameValue], right: &[GameValue]) -> Option<DyadicRational> {
        let mut max_left = None;
        for &l in left {
            let x = self.node(l).number?;
            max_left = Some(max_left.map_or(x, |m: DyadicRational| m.max(x)));
        }
        let mut min_right = None;
        for &r in right {
            let x = self.node(r).number?;
            min_right = Some(min_right.map_or(x, |m: DyadicRational| m.min(x)));
        }
        match (max_left, min_right) {
            (Some(l), Some(r)) if l >= r => None,
            _ => Some(DyadicRational::simplest_between(max_left, min_right)),
        }
    }

    pub(crate) fn number(&mut self, x: DyadicRational) -> Result<GameValue, GameError> {
        if let Some(&g) = self.numbers.get(&x) {
            return Ok(g);
        }
        let (left, right) = if x.is_integer() {
            let n = x.numerator();
            match n.cmp(&0) {
                std::cmp::Ordering::Equal => (vec![], vec![]),
                std::cmp::Ordering::Greater => (vec![self.number(DyadicRational::integer(n - 1))?], vec![]),
                std::cmp::Ordering::Less => (vec![], vec![self.number(DyadicRational::integer(n + 1))?]),
            }
        } else {
            let (p, q) = (x.numerator(), x.denominator_log2());
            (
                vec![self.number(DyadicRational::new(p - 1, q))?],
                vec![self.number(DyadicRational::new(p + 1, q))?],
            )
        };
        let g = self.intern(left, right)?;
        debug_assert_eq!(self.node(g).number, Some(x));
        Ok(g)
    }

    pub(crate) fn leq(&mut self, g: GameValue, h: GameValue) -> bool {
        if g == h {
            return true;
        }
        if let (Some(x), Some(y)) = (self.node(g).number, self.node(h).number) {
            return x <= y;
        }
        if let Some(&r) = self.leq_memo.get(&(g, h)) {
            return r;
        }
        // g <= h fails iff some gL >= h or some hR <= g.
        let mut result = true;
        for i in 0..self.node(g).left.len() {
            let gl = self.node(g).left[i];
            if self.leq(h, gl) {
                result = false;
                break;
            }
        }
        if result {
            for i in 0..self.node(h).right.len() {
                let hr = self.node(h).right[i];
                if self.leq(hr, g) {
                    result = false;
                    break;
                }
            }
        }
        self.leq_memo.insert((g, h), result);
        result
    }

    pub(crate) fn compare(&mut self, g: GameValue, h: GameValue) -> Comparison {
        match (self.leq(g, h), self.leq(h, g)) {
            (true, true) => Comparison::Equal,
            (true, false) => Comparison::Less,
            (false, true) => Comparison::Greater,
            (false, false) => Comparison::Confused,
        }
    }

    pub(crate) fn outcome(&mut self, g: GameValue) -> OutcomeClass {
        match self.compare(g, GameValue::ZERO) {
            Comparison::Greater => OutcomeClass::V,
            Comparison::Less => OutcomeClass::H,
            Comparison::Confused => OutcomeClass::First,
            Comparison::Equal => OutcomeClass::Second,
        }
    }

    /// `x <= {left | right}` for a game given by option lists.
    fn leq_lists(&mut self, x: GameValue, left: &[GameValue], right: &[GameValue]) -> bool {
        for i in 0..self.node(x).left.len() {
            let xl = self.node(x).left[i];
            if self.lists_leq(left, right, xl) {
                return false;
            }
        }
        !right.iter().any(|&gr| self.leq(gr, x))
    }

    /// `{left | right} <= x` for a game given by option lists.
    fn lists_leq(&mut self, left: &[GameValue], right: &[GameValue], x: GameValue) -> bool {
        if left.iter().any(|&gl| self.leq(x, gl)) {
            return false;
        }
        for i in 0..self.node(x).right.len() {
            let xr = self.node(x).right[i];
            if self.leq_lists(xr, left, right) {
                return false;
            }
        }
        true
    }

    /// Keeps the options not dominated by another; `keep_max` selects Left's
    /// preference (larger is better) versus Right's.
    fn undominated(&mut self, options: Vec<GameValue>, keep_max: bool) -> Vec<GameValue> {
        let mut kept: Vec<GameValue> = Vec::with_capacity(options.len());
        for (i, &a) in options.iter().enumerate() {
            let dominated = options.iter().enumerate().any(|(j, &b)| {
                if i == j {
                    return false;
                }
                let worse = if keep_max { self.leq(a, b) } else { self.leq(b, a) };
                // equal options cannot coexist after dedup, so `worse` is strict
                worse
            });
            if !dominated {
                kept.push(a);
            }
        }
        kept
    }

    /// Canonical form of `{left | right}` given canonical options.
    pub(crate) fn make(
        &mut self,
        mut left: Vec<GameValue>,
        mut right: Vec<GameValue>,
    ) -> Result<GameValue, GameError> {
        left.sort_unstable();
        left.dedup();
        right.sort_unstable();
        right.dedup();

        if let Some(g) = self.make_numeric(&left, &right)? {
            return Ok(g);
        }

        loop {
            left = self.undominated(left, true);
            right = self.undominated(right, false);
            let mut changed = false;

            let mut new_left = Vec::with_capacity(left.len());
            for &a in &left {
                let mut reversed = None;
                for i in 0..self.node(a).right.len() {
                    let ar = self.node(a).right[i];
                    if self.leq_lists(ar, &left, &right) {
                        reversed = Some(ar);
                        break;
                    }
                }
                match reversed {
                    Some(ar) => {
                        new_left.extend_from_slice(&self.node(ar).left);
                        changed = true;
                    }
                    None => new_left.push(a),
                }
            }
            new_left.sort_unstable();
            new_left.dedup();

            let mut new_right = Vec::with_capacity(right.len());
            for &b in &right {
                let mut reversed = None;
                for i in 0..self.node(b).left.len() {
                    let bl = self.node(b).left[i];
                    if self.lists_leq(&new_left, &right, bl) {
                        reversed = Some(bl);
                        break;
                    }
                }
                match reversed {
                    Some(bl) => {
                        new_right.extend_from_slice(&self.node(bl).right);
                        changed = true;
                    }
                    None => new_right.push(b),
                }
            }
            new_right.sort_unstable();
            new_right.dedup();

            left = new_left;
            right = new_right;
            if !changed {
                break;
            }
        }
        if let Some(g) = self.make_numeric(&left, &right)? {
            return Ok(g);
        }
        self.intern(left, right)
    }

    /// Shortcut for option lists made only of numbers.
    fn make_numeric(
        &mut self,
        left: &[GameValue],
        right: &[GameValue],
    ) -> Result<Option<GameValue>, GameError> {
        let mut max_left: Option<(DyadicRational, GameValue)> = None;
        for &l in left {
            let Some(x) = self.node(l).number else {
                return Ok(None);
            };
            if max_left.is_none_or(|(m, _)| x > m) {
                max_left = Some((x, l));
            }
        }
        let mut min_right: Option<(DyadicRational, GameValue)> = None;
        for &r in right {
            let Some(x) = self.node(r).number else {
                return Ok(None);
            };
            if min_right.is_none_or(|(m, _)| x < m) {
                min_right = Some((x, r));
            }
        }
        match (max_left, min_right) {
            (Some((l, lg)), Some((r, rg))) if l >= r => {
                // A switch between numbers is already canonical.
                Ok(Some(self.intern(vec![lg], vec![rg])?))
            }
            _ => {
                let x = DyadicRational::simplest_between(
                    max_left.map(|(x, _)| x),
                    min_right.map(|(x, _)| x),
                );
                Ok(Some(self.number(x)?))
            }
        }
    }

    pub(crate) fn negate(&mut self, g: GameValue) -> Result<GameValue, GameError> {
        if g == GameValue::ZERO {
            return Ok(g);
        }
        if let Some(x) = self.node(g).number {
            return self.number(-x);
        }
        if let Some(&n) = self.neg_memo.get(&g) {
            return Ok(n);
        }
        let mut left = Vec::with_capacity(self.node(g).right.len());
        for i in 0..self.node(g).right.len() {
            let r = self.node(g).right[i];
            left.push(self.negate(r)?);
        }
        let mut right = Vec::with_capacity(self.node(g).left.len());
        for i in 0..self.node(g).left.len() {
            let l = self.node(g).left[i];
            right.push(self.negate(l)?);
        }
        // negation maps canonical forms to canonical forms
        let n = self.intern(left, right)?;
        self.neg_memo.insert(g, n);
        self.neg_memo.insert(n, g);
        Ok(n)
    }

    pub(crate) fn add(&mut self, g: GameValue, h: GameValue) -> Result<GameValue, GameError> {
        if g == GameValue::ZERO {
            return Ok(h);
        }
        if h == GameValue::ZERO {
            return Ok(g);
        }
        let key = if g <= h { (g, h) } else { (h, g) };
        if let Some(&s) = self.add_memo.get(&key) {
            return Ok(s);
        }
        let gn = self.node(g).number;
        let hn = self.node(h).number;
        let sum = match (gn, hn) {
            (Some(x), Some(y)) => self.number(x + y)?,
            // number translation: G + x = {GL + x | GR + x} when G is not a number
            (Some(_), None) => self.translate(h, g)?,
            (None, Some(_)) => self.translate(g, h)?,
            (None, None) => {
                let mut left = Vec::new();
                let mut right = Vec::new();
                for i in 0..self.node(g).left.len() {
                    let gl = self.node(g).left[i];
                    left.push(self.add(gl, h)?);
                }
                for i in 0..self.node(h).left.len() {
                    let hl = self.node(h).left[i];
                    left.push(self.add(g, hl)?);
                }
                for i in 0..self.node(g).right.len() {
                    let gr = self.node(g).right[i];
                    right.push(self.add(gr, h)?);
                }
                for i in 0..self.node(h).right.len() {
                    let hr = self.node(h).right[i];
                    right.push(self.add(g, hr)?);
                }
                self.make(left, right)?
            }
        };
        self.add_memo.insert(key, sum);
        Ok(sum)
    }

    fn translate(&mut self, g: GameValue, x: GameValue) -> Result<GameValue, GameError> {
        let mut left = Vec::with_capacity(self.node(g).left.len());
        for i in 0..self.node(g).left.len() {
            let gl = self.node(g).left[i];
            left.push(self.add(gl, x)?);
        }
        let mut right = Vec::with_capacity(self.node(g).right.len());
        for i in 0..self.node(g).right.len() {
            let gr = self.node(g).right[i];
            right.push(self.add(gr, x)?);
        }
        self.make(left, right)
    }

    pub(crate) fn multiply_int(&mut self, n: u32, g: GameValue) -> Result<GameValue, GameError> {
        let mut acc = GameValue::ZERO;
        for _ in 0..n {
            acc = self.add(acc, g)?;
        }
        Ok(acc)
    }

    pub(crate) fn runs(&mut self, g: GameValue) -> (u32, u32) {
        if let Some(&r) = self.run_memo.get(&g) {
            return r;
        }
        if let Some(x) = self.node(g).number {
            if x.is_integer() {
                let n = x.numerator();
                let r = if n >= 0 { (n as u32, 0) } else { (0, (-n) as u32) };
                self.run_memo.insert(g, r);
                return r;
            }
        }
        let mut left_run = 0;
        for i in 0..self.node(g).left.len() {
            let gl = self.node(g).left[i];
            left_run = left_run.max(1 + self.runs(gl).0);
        }
        let mut right_run = 0;
        for i in 0..self.node(g).right.len() {
            let gr = self.node(g).right[i];
            right_run = right_run.max(1 + self.runs(gr).1);
        }
        self.run_memo.insert(g, (left_run, right_run));
        (left_run, right_run)
    }
}
