#include "bkm/lie_engine.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <functional>
#include <mutex>
#include <numeric>
#include <stdexcept>
#include <thread>

#include "bkm/errors.hpp"

namespace bkm {

namespace {

void parallel_for(std::size_t count, unsigned threads, const std::function<void(std::size_t)>& fn) {
  if (threads <= 1 || count < 2) {
    for (std::size_t k = 0; k < count; ++k) fn(k);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::thread> pool;
  std::exception_ptr err;
  std::mutex err_mu;
  unsigned t = std::min<unsigned>(threads, static_cast<unsigned>(count));
  for (unsigned w = 0; w < t; ++w)
    pool.emplace_back([&] {
      for (std::size_t k; (k = next.fetch_add(1)) < count;) {
        try {
          fn(k);
        } catch (...) {
          std::lock_guard<std::mutex> lock(err_mu);
          if (!err) err = std::current_exception();
        }
      }
    });
  for (auto& th : pool) th.join();
  if (err) std::rethrow_exception(err);
}

void words_of_degree(const RootSum& beta, std::vector<std::string>& out) {
  RootSum left = beta;
  std::string cur;
  const int h = beta.height();
  std::function<void()> rec = [&] {
    if (static_cast<int>(cur.size()) == h) {
      out.push_back(cur);
      return;
    }
    for (std::size_t i = 0; i < left.size(); ++i) {
      if (left[i] == 0) continue;
      --left[i];
      cur.push_back(static_cast<char>(i));
      rec();
      cur.pop_back();
      ++left[i];
    }
  };
  rec();
}

struct Relator {
  RootSum degree;
  std::vector<std::pair<std::string, Rational>> terms;
};

std::vector<Relator> serre_relators(const CartanMatrix& a, int cutoff) {
  const std::size_t n = a.size();
  std::vector<Relator> out;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      if (i == j) continue;
      if (a.is_real(i)) {
        long k = 1 - to_int64(a(i, j));
        if (k + 1 > cutoff) continue;
        Relator r;
        r.degree = RootSum::unit(n, i, static_cast<int>(k)) + RootSum::unit(n, j);
        Integer binom = 1;
        for (long s = 0; s <= k; ++s) {
          std::string w(static_cast<std::size_t>(k - s), static_cast<char>(i));
          w.push_back(static_cast<char>(j));
          w.append(static_cast<std::size_t>(s), static_cast<char>(i));
          Rational c(s % 2 ? -binom : binom);
          r.terms.emplace_back(std::move(w), c);
          binom = binom * (k - s) / (s + 1);
        }
        out.push_back(std::move(r));
      } else if (a(i, j) == 0 && i < j && cutoff >= 2) {
        Relator r;
        r.degree = RootSum::unit(n, i) + RootSum::unit(n, j);
        r.terms.emplace_back(std::string{static_cast<char>(i), static_cast<char>(j)}, Rational(1));
        r.terms.emplace_back(std::string{static_cast<char>(j), static_cast<char>(i)}, Rational(-1));
        out.push_back(std::move(r));
      }
    }
  return out;
}

}  // namespace

std::size_t estimate_engine_bytes(std::size_t rank, int cutoff) {
  double words = 0;
  for (int h = 0; h <= cutoff; ++h) words += std::pow(static_cast<double>(rank), h);
  double bytes = words * (320.0 + cutoff);
  if (bytes > 1e18) return static_cast<std::size_t>(1e18);
  return static_cast<std::size_t>(bytes);
}

std::shared_ptr<const GradedNilpotent> GradedNilpotent::build(const CartanMatrix& a, const EngineOptions& opt) {
  if (opt.cutoff < 0) throw BkmError(ErrorKind::InvalidInput, "cutoff must be >= 0");
  std::size_t need = estimate_engine_bytes(a.size(), opt.cutoff);
  if (need / (1024 * 1024) > opt.budget_mb)
    throw BkmError(ErrorKind::CutoffTooLargeForBudget,
                   "cutoff " + std::to_string(opt.cutoff) + " at rank " + std::to_string(a.size()) + " needs about " +
                       std::to_string(need / (1024 * 1024)) + " MB, budget is " + std::to_string(opt.budget_mb) +
                       " MB");

  std::shared_ptr<GradedNilpotent> g(new GradedNilpotent(a, opt.cutoff));
  g->grades_ = root_sums_up_to(a.size(), opt.cutoff);
  for (std::size_t k = 0; k < g->grades_.size(); ++k) g->grade_index_[g->grades_[k]] = k;
  g->pieces_.resize(g->grades_.size());

  const auto relators = serre_relators(a, opt.cutoff);
  std::size_t start = 0;
  while (start < g->grades_.size()) {
    int h = g->grades_[start].height();
    std::size_t end = start;
    while (end < g->grades_.size() && g->grades_[end].height() == h) ++end;
    parallel_for(end - start, opt.threads, [&](std::size_t k) {
      std::size_t idx = start + k;
      g->build_piece(idx);
      Piece& p = g->pieces_[idx];
      for (const auto& r : relators) {
        if (r.degree != g->grades_[idx]) continue;
        Vec v(p.words.size());
        for (const auto& [w, c] : r.terms) v[p.word_index.at(w)] += c;
        p.ideal.insert(std::move(v));
      }
      p.std_of_col.assign(p.words.size(), -1);
      for (std::size_t c = 0; c < p.words.size(); ++c)
        if (p.ideal.pivot_row(c) < 0) {
          p.std_of_col[c] = static_cast<long>(p.std_words.size());
          p.std_words.push_back(p.words[c]);
        }
    });
    parallel_for(end - start, opt.threads, [&](std::size_t k) { g->build_lie(start + k); });
    start = end;
  }

  // Kostant partition function: product of (1 - x^gamma)^(-m_gamma)
  g->kostant_.assign(g->grades_.size(), 0);
  g->kostant_[0] = 1;
  for (const auto& gamma : g->positive_roots()) {
    std::size_t m = g->multiplicity(gamma);
    for (std::size_t rep = 0; rep < m; ++rep)
      for (std::size_t idx = 0; idx < g->grades_.size(); ++idx) {
        const RootSum& beta = g->grades_[idx];
        if (!gamma.leq(beta)) continue;
        g->kostant_[idx] += g->kostant_[g->index_of(beta - gamma)];
      }
  }
  return g;
}

void GradedNilpotent::build_piece(std::size_t idx) {
  const RootSum& beta = grades_[idx];
  Piece& p = pieces_[idx];
  words_of_degree(beta, p.words);
  for (std::size_t k = 0; k < p.words.size(); ++k) p.word_index.emplace(p.words[k], static_cast<std::uint32_t>(k));
  p.ideal = RowSpace(p.words.size());
  if (beta.height() < 2) return;

  const std::size_t n = a_.size();
  // f_i J: the rows keep their echelon shape and the blocks are disjoint
  for (std::size_t i = 0; i < n; ++i) {
    if (beta[i] == 0) continue;
    const Piece& q = piece(beta - RootSum::unit(n, i));
    for (const auto& row : q.ideal.rows()) {
      SparseRow r;
      r.idx.reserve(row.idx.size());
      for (auto c : row.idx) r.idx.push_back(p.word_index.at(static_cast<char>(i) + q.words[c]));
      r.val = row.val;
      p.ideal.append_reduced_unchecked(std::move(r));
    }
  }
  // J f_i
  for (std::size_t i = 0; i < n; ++i) {
    if (beta[i] == 0) continue;
    const Piece& q = piece(beta - RootSum::unit(n, i));
    for (const auto& row : q.ideal.rows()) {
      Vec v(p.words.size());
      for (std::size_t k = 0; k < row.idx.size(); ++k)
        v[p.word_index.at(q.words[row.idx[k]] + static_cast<char>(i))] = row.val[k];
      p.ideal.insert(std::move(v));
    }
  }
}

void GradedNilpotent::build_lie(std::size_t idx) {
  const RootSum& beta = grades_[idx];
  Piece& p = pieces_[idx];
  p.lie = RowSpace(p.std_words.size());
  const int h = beta.height();
  if (h == 0) return;
  if (h == 1) {
    Vec v(1, Rational(1));
    p.lie.insert(v);
    return;
  }
  const std::size_t n = a_.size();
  for (std::size_t j = 0; j < n; ++j) {
    if (beta[j] == 0) continue;
    RootSum gamma = beta - RootSum::unit(n, j);
    const Piece& q = piece(gamma);
    for (const auto& row : q.lie.rows()) {
      Vec x = row.dense(q.std_words.size());
      Vec v = left_mult(j, gamma, x);
      Vec w = right_mult(gamma, x, j);
      for (std::size_t k = 0; k < v.size(); ++k) v[k] -= w[k];
      p.lie.insert(std::move(v));
    }
  }
}

bool GradedNilpotent::in_range(const RootSum& beta) const {
  return beta.size() == a_.size() && beta.is_nonnegative() && beta.height() <= cutoff_;
}

std::size_t GradedNilpotent::index_of(const RootSum& beta) const {
  auto it = grade_index_.find(beta);
  if (it == grade_index_.end())
    throw BkmError(ErrorKind::InvalidInput, "grade " + beta.str() + " outside the engine cutoff " +
                                                std::to_string(cutoff_));
  return it->second;
}

std::size_t GradedNilpotent::dim_u(const RootSum& beta) const { return piece(beta).std_words.size(); }

const std::vector<std::string>& GradedNilpotent::standard_words(const RootSum& beta) const {
  return piece(beta).std_words;
}

long GradedNilpotent::standard_index(const RootSum& beta, const std::string& word) const {
  const Piece& p = piece(beta);
  auto it = p.word_index.find(word);
  if (it == p.word_index.end()) return -1;
  return p.std_of_col[it->second];
}

std::size_t GradedNilpotent::ideal_rank(const RootSum& beta) const { return piece(beta).ideal.rank(); }

void GradedNilpotent::add_normal_form(const Piece& p, const std::string& word, const Rational& coef, Vec& out) const {
  std::uint32_t col = p.word_index.at(word);
  long r = p.ideal.pivot_row(col);
  if (r < 0) {
    out[static_cast<std::size_t>(p.std_of_col[col])] += coef;
    return;
  }
  const SparseRow& row = p.ideal.rows()[static_cast<std::size_t>(r)];
  for (std::size_t k = 0; k < row.idx.size(); ++k) {
    if (row.idx[k] == col) continue;
    out[static_cast<std::size_t>(p.std_of_col[row.idx[k]])] -= coef * row.val[k];
  }
}

SparseRow GradedNilpotent::normal_form(const RootSum& beta, const std::string& word) const {
  const Piece& p = piece(beta);
  Vec out(p.std_words.size());
  add_normal_form(p, word, Rational(1), out);
  return SparseRow::from_dense(out);
}

Vec GradedNilpotent::left_mult(std::size_t j, const RootSum& beta, const Vec& v) const {
  const Piece& src = piece(beta);
  const Piece& dst = piece(beta + RootSum::unit(a_.size(), j));
  Vec out(dst.std_words.size());
  for (std::size_t k = 0; k < v.size(); ++k)
    if (v[k] != 0) add_normal_form(dst, static_cast<char>(j) + src.std_words[k], v[k], out);
  return out;
}

Vec GradedNilpotent::right_mult(const RootSum& beta, const Vec& v, std::size_t j) const {
  const Piece& src = piece(beta);
  const Piece& dst = piece(beta + RootSum::unit(a_.size(), j));
  Vec out(dst.std_words.size());
  for (std::size_t k = 0; k < v.size(); ++k)
    if (v[k] != 0) add_normal_form(dst, src.std_words[k] + static_cast<char>(j), v[k], out);
  return out;
}

Vec GradedNilpotent::multiply(const RootSum& beta, const Vec& u, const RootSum& gamma, const Vec& v) const {
  const Piece& pu = piece(beta);
  const Piece& pv = piece(gamma);
  const Piece& dst = piece(beta + gamma);
  Vec out(dst.std_words.size());
  for (std::size_t a = 0; a < u.size(); ++a) {
    if (u[a] == 0) continue;
    for (std::size_t b = 0; b < v.size(); ++b)
      if (v[b] != 0) add_normal_form(dst, pu.std_words[a] + pv.std_words[b], u[a] * v[b], out);
  }
  return out;
}

std::size_t GradedNilpotent::multiplicity(const RootSum& beta) const { return piece(beta).lie.rank(); }

std::vector<Vec> GradedNilpotent::lie_basis(const RootSum& beta) const {
  const Piece& p = piece(beta);
  std::vector<Vec> out;
  for (const auto& row : p.lie.rows()) out.push_back(row.dense(p.std_words.size()));
  return out;
}

Vec GradedNilpotent::lie_coords(const RootSum& beta, const Vec& x) const {
  const Piece& p = piece(beta);
  Vec coords(p.lie.rank());
  Vec rest = x;
  for (std::size_t r = 0; r < p.lie.rank(); ++r) coords[r] = x[p.lie.pivot_col(r)];
  p.lie.reduce(rest);
  if (!is_zero(rest)) throw std::logic_error("lie_coords: vector is not in n^-_" + beta.str());
  return coords;
}

std::vector<Vec> GradedNilpotent::bracket_table(const RootSum& beta, const RootSum& gamma) const {
  auto xb = lie_basis(beta);
  auto yb = lie_basis(gamma);
  RootSum sum = beta + gamma;
  std::vector<Vec> out;
  for (const auto& x : xb)
    for (const auto& y : yb) {
      Vec xy = multiply(beta, x, gamma, y);
      Vec yx = multiply(gamma, y, beta, x);
      for (std::size_t k = 0; k < xy.size(); ++k) xy[k] -= yx[k];
      out.push_back(lie_coords(sum, xy));
    }
  return out;
}

std::vector<RootSum> GradedNilpotent::positive_roots() const {
  std::vector<RootSum> out;
  for (std::size_t k = 0; k < grades_.size(); ++k)
    if (grades_[k].height() > 0 && pieces_[k].lie.rank() > 0) out.push_back(grades_[k]);
  return out;
}

Integer GradedNilpotent::kostant(const RootSum& beta) const { return kostant_[index_of(beta)]; }

Integer necklace_count(int x, int y) {
  if (x < 0 || y < 0 || x + y == 0) return 0;
  auto mobius = [](int d) {
    int result = 1;
    for (int p = 2; p * p <= d; ++p)
      if (d % p == 0) {
        d /= p;
        if (d % p == 0) return 0;
        result = -result;
      }
    if (d > 1) result = -result;
    return result;
  };
  auto binom = [](int n, int k) {
    Integer r;
    mpz_bin_uiui(r.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
    return r;
  };
  int g = std::gcd(x, y);
  Integer s = 0;
  for (int d = 1; d <= g; ++d)
    if (g % d == 0) s += mobius(d) * binom((x + y) / d, x / d);
  return s / (x + y);
}

Integer witt_multiplicity(const CartanMatrix& a, int x, int y) {
  if (a.size() != 2 || a.has_real_nodes() || a(0, 1) == 0)
    throw BkmError(ErrorKind::NotFreeCase, "needs rank 2, no real nodes and A_12 != 0");
  return necklace_count(x, y);
}

VermaModel::VermaModel(std::shared_ptr<const GradedNilpotent> alg, Weight lambda)
    : alg_(std::move(alg)), lambda_(std::move(lambda)) {
  if (lambda_.size() != alg_->rank()) throw BkmError(ErrorKind::InvalidInput, "weight length differs from rank");
}

std::size_t VermaModel::dim(const RootSum& beta) const { return alg_->dim_u(beta); }

Vec VermaModel::raise_word(std::size_t i, const RootSum& beta, const std::string& word) const {
  const CartanMatrix& a = matrix();
  RootSum gamma = beta - RootSum::unit(a.size(), i);
  Vec out(alg_->dim_u(gamma));
  Rational tail = 0;  // sum_{s>t} A[i][w_s]
  for (std::size_t t = word.size(); t-- > 0;) {
    auto wt = static_cast<std::size_t>(word[t]);
    if (wt == i) {
      Rational coef = lambda_[i] - tail;
      if (coef != 0) {
        std::string rest = word.substr(0, t) + word.substr(t + 1);
        SparseRow nf = alg_->normal_form(gamma, rest);
        for (std::size_t k = 0; k < nf.idx.size(); ++k) out[nf.idx[k]] += coef * nf.val[k];
      }
    }
    tail += a(i, wt);
  }
  return out;
}

Mat VermaModel::raising(std::size_t i, const RootSum& beta) const {
  if (beta[i] == 0) return {};
  RootSum gamma = beta - RootSum::unit(matrix().size(), i);
  const auto& words = alg_->standard_words(beta);
  Mat m(alg_->dim_u(gamma), Vec(words.size()));
  for (std::size_t b = 0; b < words.size(); ++b) {
    Vec col = raise_word(i, beta, words[b]);
    for (std::size_t r = 0; r < col.size(); ++r) m[r][b] = col[r];
  }
  return m;
}

Vec VermaModel::apply_raising(std::size_t i, const RootSum& beta, const Vec& v) const {
  if (beta[i] == 0) return {};
  RootSum gamma = beta - RootSum::unit(matrix().size(), i);
  Vec out(alg_->dim_u(gamma));
  const auto& words = alg_->standard_words(beta);
  for (std::size_t b = 0; b < v.size(); ++b) {
    if (v[b] == 0) continue;
    Vec col = raise_word(i, beta, words[b]);
    for (std::size_t r = 0; r < col.size(); ++r) out[r] += v[b] * col[r];
  }
  return out;
}

Vec VermaModel::lower(std::size_t j, const RootSum& beta, const Vec& v) const { return alg_->left_mult(j, beta, v); }

MaximalVectors maximal_vectors(const VermaModel& vm, const RootSum& beta) {
  MaximalVectors mv;
  std::size_t d = vm.dim(beta);
  if (beta.is_zero()) {
    mv.dim = 1;
    mv.basis.push_back(Vec(1, Rational(1)));
    return mv;
  }
  Mat stacked;
  for (std::size_t i = 0; i < beta.size(); ++i) {
    Mat e = vm.raising(i, beta);
    for (auto& row : e) stacked.push_back(std::move(row));
  }
  mv.basis = nullspace(stacked, d);
  mv.dim = mv.basis.size();
  return mv;
}

Submodule::Submodule(const VermaModel& vm) : vm_(&vm) {
  for (const auto& g : vm.algebra().grades()) spaces_.emplace(g, RowSpace(vm.dim(g)));
}

const RowSpace& Submodule::at(const RootSum& beta) const { return spaces_.at(beta); }
RowSpace& Submodule::at(const RootSum& beta) { return spaces_.at(beta); }

std::size_t Submodule::quotient_dim(const RootSum& beta) const { return vm_->dim(beta) - at(beta).rank(); }

std::map<RootSum, std::size_t> Submodule::quotient_dims() const {
  std::map<RootSum, std::size_t> out;
  for (const auto& [g, rs] : spaces_) out[g] = vm_->dim(g) - rs.rank();
  return out;
}

Submodule generated_submodule(const VermaModel& vm, const std::vector<std::pair<RootSum, Vec>>& gens) {
  const std::size_t n = vm.matrix().size();
  for (const auto& [beta, v] : gens)
    for (std::size_t i = 0; i < n; ++i) {
      if (beta[i] == 0) continue;
      if (!is_zero(vm.apply_raising(i, beta, v)))
        throw std::logic_error("generated_submodule: generator at " + beta.str() + " is not maximal");
    }
  Submodule s(vm);
  for (const auto& beta : vm.algebra().grades()) {
    RowSpace& here = s.at(beta);
    for (const auto& [g, v] : gens)
      if (g == beta) here.insert(v);
    for (std::size_t j = 0; j < n; ++j) {
      if (beta[j] == 0) continue;
      RootSum gamma = beta - RootSum::unit(n, j);
      const RowSpace& below = s.at(gamma);
      for (const auto& row : below.rows()) here.insert(vm.lower(j, gamma, row.dense(below.ncols())));
    }
  }
  return s;
}

Vec hole_vector(const VermaModel& vm, const RootSum& gamma) {
  std::string word;
  for (std::size_t h = 0; h < gamma.size(); ++h) word.append(static_cast<std::size_t>(gamma[h]), static_cast<char>(h));
  return vm.algebra().normal_form(gamma, word).dense(vm.dim(gamma));
}

std::map<RootSum, std::size_t> quotient_multiplicities(const VermaModel& vm, const std::vector<RootSum>& holes) {
  std::vector<std::pair<RootSum, Vec>> gens;
  for (const auto& h : holes)
    if (vm.algebra().in_range(h)) gens.emplace_back(h, hole_vector(vm, h));
  return generated_submodule(vm, gens).quotient_dims();
}

Submodule radical(const VermaModel& vm) {
  const std::size_t n = vm.matrix().size();
  Submodule s(vm);
  for (const auto& beta : vm.algebra().grades()) {
    if (beta.is_zero()) continue;
    const auto& words = vm.algebra().standard_words(beta);
    Mat stacked;
    for (std::size_t i = 0; i < n; ++i) {
      if (beta[i] == 0) continue;
      RootSum gamma = beta - RootSum::unit(n, i);
      const RowSpace& rad = s.at(gamma);
      auto free = rad.free_columns();
      Mat block(free.size(), Vec(words.size()));
      for (std::size_t b = 0; b < words.size(); ++b) {
        Vec img = vm.raise_word(i, beta, words[b]);
        rad.reduce(img);
        for (std::size_t f = 0; f < free.size(); ++f) block[f][b] = img[free[f]];
      }
      for (auto& row : block) stacked.push_back(std::move(row));
    }
    for (auto& v : nullspace(stacked, words.size())) s.at(beta).insert(std::move(v));
  }
  return s;
}

std::map<RootSum, std::size_t> simple_multiplicities(const VermaModel& vm) { return radical(vm).quotient_dims(); }

namespace {

Mat mat_mul(const Mat& x, const Mat& y, std::size_t ycols) {
  Mat out(x.size(), Vec(ycols));
  for (std::size_t r = 0; r < x.size(); ++r)
    for (std::size_t k = 0; k < x[r].size(); ++k) {
      if (x[r][k] == 0) continue;
      for (std::size_t c = 0; c < ycols; ++c)
        if (y[k][c] != 0) out[r][c] += x[r][k] * y[k][c];
    }
  return out;
}

const Mat& shapovalov_memo(const VermaModel& vm, const RootSum& beta, std::map<RootSum, Mat>& memo) {
  auto it = memo.find(beta);
  if (it != memo.end()) return it->second;
  const std::size_t n = vm.matrix().size();
  Mat s;
  if (beta.is_zero()) {
    s = Mat{Vec{Rational(1)}};
  } else {
    const auto& words = vm.algebra().standard_words(beta);
    s.assign(words.size(), Vec(words.size()));
    std::vector<Mat> t(n);
    for (std::size_t i = 0; i < n; ++i) {
      if (beta[i] == 0) continue;
      RootSum gamma = beta - RootSum::unit(n, i);
      const Mat& below = shapovalov_memo(vm, gamma, memo);
      t[i] = mat_mul(below, vm.raising(i, beta), words.size());
    }
    for (std::size_t a = 0; a < words.size(); ++a) {
      auto i = static_cast<std::size_t>(words[a][0]);
      RootSum gamma = beta - RootSum::unit(n, i);
      long idx = vm.algebra().standard_index(gamma, words[a].substr(1));
      if (idx < 0) throw std::logic_error("standard words are not suffix closed");
      s[a] = t[i][static_cast<std::size_t>(idx)];
    }
  }
  return memo.emplace(beta, std::move(s)).first->second;
}

}  // namespace

Mat shapovalov_matrix(const VermaModel& vm, const RootSum& beta) {
  std::map<RootSum, Mat> memo;
  return shapovalov_memo(vm, beta, memo);
}

ShapovalovCheck shapovalov_det_check(const VermaModel& vm, const RootSum& beta) {
  const CartanMatrix& a = vm.matrix();
  a.symmetrizer();
  ShapovalovCheck out;
  out.det_zero = determinant(shapovalov_matrix(vm, beta)) == 0;
  Weight lr = vm.lambda();
  Weight rho = weyl_vector(a);
  for (std::size_t i = 0; i < a.size(); ++i) lr[i] += rho[i];
  for (const auto& root : vm.algebra().positive_roots()) {
    if (!root.leq(beta)) continue;
    Rational lhs = 2 * pair_weight_root(a, lr, root);
    Rational norm = pair_roots(a, root, root);
    for (int r = 1; root.scaled(r).leq(beta); ++r)
      if (lhs == r * norm) {
        out.predicted_singular = true;
        return out;
      }
  }
  return out;
}

}  // namespace bkm
