#include "loopforms/reduction.hpp"

#include <algorithm>
#include <utility>

#include "loopforms/errors.hpp"

namespace loopforms::reduction {

using detail::IntMatrix;

SymmetricForm block_form(Block b) {
  switch (b) {
    case Block::PlusOne: return SymmetricForm::diagonal({Int(1)});
    case Block::MinusOne: return SymmetricForm::diagonal({Int(-1)});
    case Block::Hyperbolic: return SymmetricForm({{Int(0), Int(1)}, {Int(1), Int(0)}});
  }
  throw Error("unknown block kind");
}

SymmetricForm assemble_blocks(const std::vector<Block>& blocks) {
  if (blocks.empty()) throw Error("cannot assemble an empty block list");
  std::vector<SymmetricForm> pieces;
  pieces.reserve(blocks.size());
  for (Block b : blocks) pieces.push_back(block_form(b));
  return forms::block_sum(pieces);
}

BlockCounts count_blocks(const std::vector<Block>& blocks) {
  BlockCounts c;
  for (Block b : blocks) {
    if (b == Block::PlusOne) ++c.plus_one;
    else if (b == Block::MinusOne) ++c.minus_one;
    else ++c.hyperbolic;
  }
  return c;
}

bool CongruenceCertificate::verify() const {
  if (base_change.dimension() != source.dimension()) return false;
  int total = 0;
  for (Block b : blocks) total += (b == Block::Hyperbolic) ? 2 : 1;
  if (total != source.dimension()) return false;
  return transform(source, base_change) == assemble_blocks(blocks);
}

bool is_chain_form(const SymmetricForm& a) {
  const int n = a.dimension();
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      const Int& x = a.at(i, j);
      if (j > i + 1) {
        if (x != 0) return false;
      } else if (x != 0 && x != 1 && x != -1) {
        return false;
      }
    }
  return true;
}

namespace {

int block_order(Block b) {
  return b == Block::PlusOne ? 0 : (b == Block::MinusOne ? 1 : 2);
}

struct PlacedBlock {
  Block kind;
  int i;       // primary index in the work matrix
  int j = -1;  // partner index for hyperbolic pairs
};

// Block multisets are only well-defined once a mixed odd + hyperbolic
// presentation is outlawed: (1) + H and 2(1) + (-1) are congruent. The
// rewrite uses a fixed rank-3 witness, mirrored for the (-1) + H case.
const IntMatrix& odd_plus_h_witness() {
  static const IntMatrix w{{Int(1), Int(1), Int(1)},
                           {Int(1), Int(0), Int(1)},
                           {Int(0), Int(-1), Int(-1)}};
  return w;
}

const IntMatrix& minus_plus_h_witness() {
  static const IntMatrix w{{Int(1), Int(1), Int(1)},
                           {Int(1), Int(0), Int(1)},
                           {Int(0), Int(1), Int(1)}};
  return w;
}

// Takes a base change `u` with transform(source, u) equal to the blocks
// assembled in list order; rewrites mixed presentations away, sorts the
// blocks (+1) < (-1) < H, and returns the finished certificate.
CongruenceCertificate finish_certificate(const SymmetricForm& source, IntMatrix u,
                                         std::vector<Block> blocks) {
  const int n = source.dimension();

  auto offsets = [&]() {
    std::vector<int> off(blocks.size() + 1, 0);
    for (size_t k = 0; k < blocks.size(); ++k)
      off[k + 1] = off[k] + (blocks[k] == Block::Hyperbolic ? 2 : 1);
    return off;
  };

  while (true) {
    auto counts = count_blocks(blocks);
    if (counts.hyperbolic == 0 || counts.plus_one + counts.minus_one == 0) break;
    auto off = offsets();
    int odd_k = -1, hyp_k = -1;
    for (size_t k = 0; k < blocks.size(); ++k) {
      if (blocks[k] != Block::Hyperbolic && odd_k < 0) odd_k = static_cast<int>(k);
      if (blocks[k] == Block::Hyperbolic && hyp_k < 0) hyp_k = static_cast<int>(k);
    }
    const int a = off[odd_k], b = off[hyp_k];
    const bool plus = blocks[odd_k] == Block::PlusOne;
    const IntMatrix& w = plus ? odd_plus_h_witness() : minus_plus_h_witness();
    IntMatrix embed = IntMatrix::identity(n);
    const int coords[3] = {a, b, b + 1};
    for (int r = 0; r < 3; ++r)
      for (int c = 0; c < 3; ++c) embed.at(coords[r], coords[c]) = w.at(r, c);
    u = multiply(u, embed);
    // In place: the odd block keeps its sign, the pair turns diagonal.
    blocks[hyp_k] = plus ? Block::PlusOne : Block::MinusOne;
    blocks.insert(blocks.begin() + hyp_k + 1, plus ? Block::MinusOne : Block::PlusOne);
  }

  // Sort the blocks through one final permutation of coordinates.
  auto off = offsets();
  std::vector<size_t> order(blocks.size());
  for (size_t k = 0; k < order.size(); ++k) order[k] = k;
  std::stable_sort(order.begin(), order.end(), [&](size_t x, size_t y) {
    return block_order(blocks[x]) < block_order(blocks[y]);
  });
  std::vector<Block> sorted;
  std::vector<int> perm;
  for (size_t k : order) {
    sorted.push_back(blocks[k]);
    perm.push_back(off[k]);
    if (blocks[k] == Block::Hyperbolic) perm.push_back(off[k] + 1);
  }
  IntMatrix pmat(n, n);
  for (int k = 0; k < n; ++k) pmat.at(perm[k], k) = 1;

  return CongruenceCertificate{source, UnimodularMatrix(multiply(u, pmat)), std::move(sorted)};
}

// ---- brute-force oracle internals ------------------------------------------

Int eval_q(const IntMatrix& a, const std::vector<Int>& v) {
  const int n = a.rows();
  Int q = 0;
  for (int i = 0; i < n; ++i) {
    if (v[i] == 0) continue;
    for (int j = 0; j < n; ++j) q += v[i] * a.at(i, j) * v[j];
  }
  return q;
}

Int eval_pairing(const IntMatrix& a, const std::vector<Int>& v, const std::vector<Int>& w) {
  const int n = a.rows();
  Int s = 0;
  for (int i = 0; i < n; ++i) {
    if (v[i] == 0) continue;
    for (int j = 0; j < n; ++j) s += v[i] * a.at(i, j) * w[j];
  }
  return s;
}

bool is_primitive(const std::vector<Int>& v) {
  Int g = 0;
  for (const Int& x : v) g = boost::multiprecision::gcd(g, x);
  return g == 1;
}

// Enumerates [-bound, bound]^n in shells of growing max-norm, so short
// vectors are always tried before long ones (greedy splits stay tame);
// within a shell the order is lexicographic. The zero vector comes first.
class BoxEnumerator {
 public:
  BoxEnumerator(int n, int bound) : n_(n), bound_(bound), r_(0), v_(n, Int(0)), fresh_(true) {}

  bool next(std::vector<Int>& out) {
    if (fresh_) {
      fresh_ = false;
      out = v_;
      return true;
    }
    while (true) {
      int k = n_ - 1;
      while (k >= 0) {
        if (v_[k] < r_) {
          ++v_[k];
          for (int l = k + 1; l < n_; ++l) v_[l] = -r_;
          break;
        }
        --k;
      }
      if (k < 0) {
        if (r_ >= bound_) return false;
        ++r_;
        for (auto& x : v_) x = -r_;
        out = v_;
        return true;
      }
      if (on_shell()) {
        out = v_;
        return true;
      }
    }
  }

 private:
  bool on_shell() const {
    for (const auto& x : v_)
      if (x == r_ || x == -r_) return true;
    return false;
  }

  int n_, bound_, r_;
  std::vector<Int> v_;
  bool fresh_;
};

bool is_zero_vector(const std::vector<Int>& v) {
  for (const Int& x : v)
    if (x != 0) return false;
  return true;
}

// The oracle searches for block vectors in the original coordinates,
// keeping every candidate orthogonal to the blocks already split off. Once
// the collected vectors span everything, their Gram matrix is the block
// assembly and the matrix of columns is automatically unimodular (the block
// discriminants multiply to the discriminant of the form).
struct OracleState {
  const IntMatrix& a;
  std::vector<std::vector<Int>> chosen;  // block vectors, in block order
  std::vector<Block> blocks;

  bool orthogonal_to_chosen(const std::vector<Int>& v) const {
    for (const auto& u : chosen)
      if (eval_pairing(a, u, v) != 0) return false;
    return true;
  }
  int span_count() const { return static_cast<int>(chosen.size()); }
};

bool oracle_split_one(OracleState& st, int bound) {
  const int n = st.a.rows();
  std::vector<Int> v;
  // First pass: a vector of square +-1 splits off a rank-1 block.
  for (BoxEnumerator en(n, bound); en.next(v);) {
    if (is_zero_vector(v) || !st.orthogonal_to_chosen(v)) continue;
    Int q = eval_q(st.a, v);
    if (q != 1 && q != -1) continue;
    st.blocks.push_back(q > 0 ? Block::PlusOne : Block::MinusOne);
    st.chosen.push_back(v);
    return true;
  }
  // Second pass: a primitive isotropic v paired with w of pairing 1 splits
  // off a rank-2 unimodular block.
  for (BoxEnumerator en(n, bound); en.next(v);) {
    if (is_zero_vector(v) || !st.orthogonal_to_chosen(v)) continue;
    if (eval_q(st.a, v) != 0 || !is_primitive(v)) continue;
    std::vector<Int> w;
    for (BoxEnumerator wn(n, bound); wn.next(w);) {
      if (!st.orthogonal_to_chosen(w) || eval_pairing(st.a, v, w) != 1) continue;
      // Shear w against v so its square lands in {0, 1}.
      Int h = eval_q(st.a, w);
      Int k = (h - parity_bit(h)) / 2;
      for (int i = 0; i < n; ++i) w[i] -= k * v[i];
      h = eval_q(st.a, w);
      if (h == 0) {
        st.blocks.push_back(Block::Hyperbolic);
        st.chosen.push_back(v);
        st.chosen.push_back(w);
      } else {
        // Gram [[0,1],[1,1]] is odd: the vectors w and w - v are orthogonal
        // of squares +1 and -1.
        std::vector<Int> diff(n);
        for (int i = 0; i < n; ++i) diff[i] = w[i] - v[i];
        st.blocks.push_back(Block::PlusOne);
        st.chosen.push_back(w);
        st.blocks.push_back(Block::MinusOne);
        st.chosen.push_back(std::move(diff));
      }
      return true;
    }
  }
  return false;
}

}  // namespace

CongruenceCertificate brute_force_split(const SymmetricForm& a, int bound, int max_rank) {
  if (bound < 1) throw Error("search bound must be positive");
  if (a.dimension() > max_rank)
    throw Error("rank " + std::to_string(a.dimension()) + " exceeds the oracle limit of " +
                std::to_string(max_rank));
  Int det = detail::determinant(a.matrix());
  if (det != 1 && det != -1)
    throw NotUnimodular("brute_force_split requires |det| = 1, got " + det.str());
  const int n = a.dimension();
  OracleState st{a.matrix(), {}, {}};
  while (st.span_count() < n) {
    if (!oracle_split_one(st, bound))
      throw SearchExhausted("no splitting vector with coordinates in [-" +
                            std::to_string(bound) + ", " + std::to_string(bound) + "] for " +
                            a.to_string());
  }
  IntMatrix u(n, n);
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < n; ++i) u.at(i, j) = st.chosen[j][i];
  return finish_certificate(a, std::move(u), std::move(st.blocks));
}

CongruenceCertificate brute_force_split_auto(const SymmetricForm& a, int max_rank) {
  for (int bound = 3; bound <= 24; bound *= 2) {
    try {
      return brute_force_split(a, bound, max_rank);
    } catch (const SearchExhausted&) {
      if (bound * 2 > 24) throw;
    }
  }
  throw SearchExhausted("unreachable");
}

CongruenceCertificate reduce_chain(const SymmetricForm& a) {
  const int n = a.dimension();
  Int det = detail::determinant(a.matrix());
  if (det != 1 && det != -1)
    throw NotUnimodular("reduce_chain requires |det| = 1, got " + det.str());
  if (!is_chain_form(a))
    throw NotChainShape("not a chain form (tridiagonal with unit couplings): " + a.to_string());

  IntMatrix b = a.matrix();
  IntMatrix u = IntMatrix::identity(n);

  auto add_multiple = [&](int src, int dst, const Int& c) {
    b.add_col_multiple(src, dst, c);
    b.add_row_multiple(src, dst, c);
    u.add_col_multiple(src, dst, c);
  };
  auto negate = [&](int k) {
    b.negate_col(k);
    b.negate_row(k);
    u.negate_col(k);
  };

  std::vector<bool> active(n, true);
  std::vector<PlacedBlock> placed;

  auto neighbors = [&](int i) {
    std::vector<int> ns;
    for (int k = 0; k < n; ++k)
      if (k != i && active[k] && b.at(i, k) != 0) ns.push_back(k);
    return ns;
  };

  // Flip vertex orientations so every coupling between active vertices is +1.
  // Each component is a path; walk it from an endpoint.
  auto normalize_couplings = [&]() {
    std::vector<bool> seen(n, false);
    for (int s = 0; s < n; ++s) {
      if (!active[s] || seen[s]) continue;
      int cur = s, prev = -1;
      for (int guard = 0; guard <= n; ++guard) {
        int next = -1;
        for (int k : neighbors(cur))
          if (k != prev) { next = k; break; }
        if (next < 0 || next == s) break;
        prev = cur;
        cur = next;
      }
      prev = -1;
      while (!seen[cur]) {
        seen[cur] = true;
        int next = -1;
        for (int k : neighbors(cur))
          if (k != prev) { next = k; break; }
        if (next < 0) break;
        if (b.at(cur, next) < 0) negate(next);
        prev = cur;
        cur = next;
      }
    }
  };

  int remaining = n;
  while (remaining > 0) {
    normalize_couplings();
    int pick = -1;
    for (int i = 0; i < n; ++i)
      if (active[i] && boost::multiprecision::abs(b.at(i, i)) <= 1) { pick = i; break; }

    if (pick < 0) {
      // No small diagonal entry anywhere. A genuinely unimodular chain always
      // has one; fall back to the oracle for anything else that slipped by.
      std::vector<int> idx;
      for (int i = 0; i < n; ++i)
        if (active[i]) idx.push_back(i);
      const int m = static_cast<int>(idx.size());
      IntMatrix sub(m, m);
      for (int r = 0; r < m; ++r)
        for (int c = 0; c < m; ++c) sub.at(r, c) = b.at(idx[r], idx[c]);
      CongruenceCertificate oracle = brute_force_split_auto(SymmetricForm(sub), m);
      IntMatrix embed = IntMatrix::identity(n);
      for (int r = 0; r < m; ++r)
        for (int c = 0; c < m; ++c) embed.at(idx[r], idx[c]) = oracle.base_change.at(r, c);
      b = multiply(multiply(transpose(embed), b), embed);
      u = multiply(u, embed);
      int pos = 0;
      for (Block blk : oracle.blocks) {
        if (blk == Block::Hyperbolic) {
          placed.push_back({blk, idx[pos], idx[pos + 1]});
          pos += 2;
        } else {
          placed.push_back({blk, idx[pos], -1});
          pos += 1;
        }
      }
      for (int i : idx) active[i] = false;
      remaining = 0;
      break;
    }

    const Int d = b.at(pick, pick);
    if (d != 0) {
      // Unit diagonal: clear the couplings and split off (d).
      for (int k : neighbors(pick)) {
        Int c = -d * b.at(pick, k);
        add_multiple(pick, k, c);
      }
      placed.push_back({d > 0 ? Block::PlusOne : Block::MinusOne, pick, -1});
      active[pick] = false;
      remaining -= 1;
    } else {
      auto ns = neighbors(pick);
      if (ns.empty())
        throw Error("internal: isolated zero vertex in a unimodular chain");
      const int j = ns.front();
      const Int h = b.at(j, j);
      // Clear every coupling of the pair {pick, j} to the rest through the
      // inverse of the unimodular 2x2 pivot [[0,1],[1,h]].
      for (int r = 0; r < n; ++r) {
        if (!active[r] || r == pick || r == j) continue;
        Int p = b.at(r, pick), q = b.at(r, j);
        if (p == 0 && q == 0) continue;
        Int cx = h * p - q, cy = -p;
        if (cx != 0) add_multiple(pick, r, cx);
        if (cy != 0) add_multiple(j, r, cy);
      }
      if (parity_bit(h) == 0) {
        if (h != 0) add_multiple(pick, j, -h / 2);
        placed.push_back({Block::Hyperbolic, pick, j});
      } else {
        add_multiple(pick, j, -(h + 1) / 2);  // diagonal at j becomes -1
        add_multiple(j, pick, Int(1));        // diagonal at pick becomes +1
        placed.push_back({Block::PlusOne, pick, -1});
        placed.push_back({Block::MinusOne, j, -1});
      }
      active[pick] = false;
      active[j] = false;
      remaining -= 2;
    }
  }

  std::vector<int> perm;
  std::vector<Block> blocks;
  for (const PlacedBlock& pb : placed) {
    blocks.push_back(pb.kind);
    perm.push_back(pb.i);
    if (pb.j >= 0) perm.push_back(pb.j);
  }
  IntMatrix pmat(n, n);
  for (int k = 0; k < n; ++k) pmat.at(perm[k], k) = 1;

  return finish_certificate(a, multiply(u, pmat), std::move(blocks));
}

}  // namespace loopforms::reduction
