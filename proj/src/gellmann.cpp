#include "su3forge/gellmann.hpp"

#include <cmath>
#include <cstdio>
#include <string>

namespace su3forge {

namespace {

constexpr double kSpanTol = 1e-12;

CMat3 sym_off(int r, int c) {
  CMat3 m;
  m(r, c) = Cx(1.0);
  m(c, r) = Cx(1.0);
  return m;
}

CMat3 asym_off(int r, int c) {
  CMat3 m;
  m(r, c) = Cx(0.0, -1.0);
  m(c, r) = Cx(0.0, 1.0);
  return m;
}

std::array<CMat3, 13> build_basis() {
  const double s3 = std::sqrt(3.0);
  std::array<CMat3, 13> b{};
  b[0] = std::sqrt(2.0 / 3.0) * CMat3::identity();
  b[1] = sym_off(0, 1);
  b[2] = asym_off(0, 1);
  b[3] = CMat3::diag(1.0, -1.0, 0.0);
  b[4] = sym_off(0, 2);
  b[5] = asym_off(0, 2);
  b[6] = sym_off(1, 2);
  b[7] = asym_off(1, 2);
  b[8] = (1.0 / s3) * CMat3::diag(1.0, 1.0, -2.0);
  b[9] = CMat3::diag(1.0, 0.0, -1.0);
  b[10] = CMat3::diag(0.0, 1.0, -1.0);
  b[11] = (1.0 / s3) * CMat3::diag(1.0, -2.0, 1.0);
  b[12] = (1.0 / s3) * CMat3::diag(-2.0, 1.0, 1.0);
  return b;
}

const std::array<CMat3, 13>& basis() {
  static const std::array<CMat3, 13> b = build_basis();
  return b;
}

double hs_inner(const CMat3& a, const CMat3& b) {
  double s = 0.0;
  for (int r = 0; r < 3; ++r)
    for (int c = 0; c < 3; ++c) s += std::real(std::conj(a(r, c)) * b(r, c));
  return s;
}

// Dense symmetric-positive solve by Gaussian elimination with partial
// pivoting; sizes stay tiny (at most 8).
std::vector<double> solve_dense(std::vector<std::vector<double>> g, std::vector<double> rhs) {
  const std::size_t n = rhs.size();
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t best = c;
    for (std::size_t r = c + 1; r < n; ++r)
      if (std::abs(g[r][c]) > std::abs(g[best][c])) best = r;
    std::swap(g[c], g[best]);
    std::swap(rhs[c], rhs[best]);
    for (std::size_t r = c + 1; r < n; ++r) {
      double f = g[r][c] / g[c][c];
      for (std::size_t k = c; k < n; ++k) g[r][k] -= f * g[c][k];
      rhs[r] -= f * rhs[c];
    }
  }
  std::vector<double> x(n, 0.0);
  for (std::size_t c = n; c-- > 0;) {
    double s = rhs[c];
    for (std::size_t k = c + 1; k < n; ++k) s -= g[c][k] * x[k];
    x[c] = s / g[c][c];
  }
  return x;
}

// Residual of Hermitian h outside span{gell(i) : i in idxs}.
double span_residual(const CMat3& h, const std::vector<int>& idxs) {
  const std::size_t n = idxs.size();
  std::vector<std::vector<double>> g(n, std::vector<double>(n, 0.0));
  std::vector<double> rhs(n, 0.0);
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = 0; b < n; ++b)
      g[a][b] = hs_inner(gell(idxs[a]), gell(idxs[b]));
    rhs[a] = hs_inner(gell(idxs[a]), h);
  }
  std::vector<double> c = solve_dense(std::move(g), std::move(rhs));
  CMat3 proj;
  for (std::size_t a = 0; a < n; ++a) proj = proj + c[a] * gell(idxs[a]);
  return frobenius_distance(h, proj);
}

void check_index(int i) {
  if (i < 0 || i >= kGellCount) throw IndexOutOfRange("generator index out of 0..12");
}

CMat3 commutator(const CMat3& a, const CMat3& b) { return a * b - b * a; }
CMat3 anticommutator(const CMat3& a, const CMat3& b) { return a * b + b * a; }

std::string fmt_num(double x) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.10g", x);
  return std::string(buf);
}

// --- embedded reference tables -------------------------------------------

struct ConstEntry {
  int i, j, k;
  double value;
};

struct CommTerm {
  double coef;  // cell contributes i * coef * gell(index)
  int index;
};

struct CommCell {
  int i, j;
  std::vector<CommTerm> terms;
};

const double S3 = std::sqrt(3.0);

const std::vector<ConstEntry>& f_list_standard() {
  static const std::vector<ConstEntry> v = {
      {1, 4, 7, 0.5},  {2, 4, 6, 0.5},  {2, 5, 7, 0.5},   {3, 4, 5, 0.5},   {1, 5, 6, -0.5},
      {3, 6, 7, -0.5}, {1, 2, 3, 1.0},  {4, 5, 8, S3 / 2}, {6, 7, 8, S3 / 2},
  };
  return v;
}

const std::vector<ConstEntry>& d_list_standard() {
  static const std::vector<ConstEntry> v = {
      {1, 1, 8, 1 / S3},        {2, 2, 8, 1 / S3},        {3, 3, 8, 1 / S3},
      {8, 8, 8, -1 / S3},       {4, 4, 8, -1 / (2 * S3)}, {5, 5, 8, -1 / (2 * S3)},
      {6, 6, 8, -1 / (2 * S3)}, {7, 7, 8, -1 / (2 * S3)}, {1, 4, 6, 0.5},
      {1, 5, 7, 0.5},           {2, 4, 7, -0.5},          {2, 5, 6, 0.5},
      {3, 4, 4, 0.5},           {3, 5, 5, 0.5},           {3, 6, 6, -0.5},
      {3, 7, 7, -0.5},
  };
  return v;
}

const std::vector<ConstEntry>& f_list_nine_eleven() {
  static const std::vector<ConstEntry> v = {
      {1, 2, 9, 0.5},  {1, 4, 7, 0.5},  {2, 4, 6, 0.5},      {2, 5, 7, 0.5},
      {1, 5, 6, -0.5}, {9, 6, 7, 0.5},  {9, 4, 5, 1.0},      {1, 2, 11, S3 / 2},
      {6, 7, 11, -S3 / 2},
  };
  return v;
}

const std::vector<ConstEntry>& d_list_nine_eleven() {
  static const std::vector<ConstEntry> v = {
      {9, 9, 11, 1 / S3},        {4, 4, 11, 1 / S3},        {5, 5, 11, 1 / S3},
      {11, 11, 11, -1 / S3},     {1, 1, 11, -1 / (2 * S3)}, {2, 2, 11, -1 / (2 * S3)},
      {6, 6, 11, -1 / (2 * S3)}, {7, 7, 11, -1 / (2 * S3)}, {1, 1, 9, 0.5},
      {1, 4, 6, 0.5},            {1, 5, 7, 0.5},            {2, 2, 9, 0.5},
      {2, 4, 7, -0.5},           {2, 5, 6, 0.5},            {9, 6, 6, -0.5},
      {9, 7, 7, -0.5},
  };
  return v;
}

const std::vector<ConstEntry>& f_list_ten_twelve() {
  static const std::vector<ConstEntry> v = {
      {1, 2, 10, -0.5},    {1, 4, 7, 0.5},      {1, 5, 6, -0.5}, {2, 4, 6, 0.5},
      {2, 5, 7, 0.5},      {10, 4, 5, 0.5},     {10, 6, 7, 1.0}, {1, 2, 12, -S3 / 2},
      {4, 5, 12, -S3 / 2},
  };
  return v;
}

const std::vector<ConstEntry>& d_list_ten_twelve() {
  static const std::vector<ConstEntry> v = {
      {10, 10, 12, 1 / S3},      {6, 6, 12, 1 / S3},        {7, 7, 12, 1 / S3},
      {12, 12, 12, -1 / S3},     {1, 1, 12, -1 / (2 * S3)}, {2, 2, 12, -1 / (2 * S3)},
      {4, 4, 12, -1 / (2 * S3)}, {5, 5, 12, -1 / (2 * S3)}, {1, 1, 10, 0.5},
      {1, 4, 6, 0.5},            {1, 5, 7, 0.5},            {2, 2, 10, 0.5},
      {2, 4, 7, -0.5},           {2, 5, 6, 0.5},            {10, 4, 4, -0.5},
      {10, 5, 5, -0.5},
  };
  return v;
}

const std::vector<CommCell>& comm_table_standard() {
  static const std::vector<CommCell> v = {
      {1, 2, {{2, 3}}},          {1, 3, {{-2, 2}}},       {1, 4, {{1, 7}}},
      {1, 5, {{-1, 6}}},         {1, 6, {{1, 5}}},        {1, 7, {{-1, 4}}},
      {1, 8, {}},                {2, 1, {{-2, 3}}},       {2, 3, {{2, 1}}},
      {2, 4, {{1, 6}}},          {2, 5, {{1, 7}}},        {2, 6, {{-1, 4}}},
      {2, 7, {{-1, 5}}},         {2, 8, {}},              {3, 1, {{2, 2}}},
      {3, 2, {{-2, 1}}},         {3, 4, {{1, 5}}},        {3, 5, {{-1, 4}}},
      {3, 6, {{-1, 7}}},         {3, 7, {{1, 6}}},        {3, 8, {}},
      {4, 1, {{-1, 7}}},         {4, 2, {{-1, 6}}},       {4, 3, {{-1, 5}}},
      {4, 5, {{1, 3}, {S3, 8}}}, {4, 6, {{1, 2}}},        {4, 7, {{1, 1}}},
      {4, 8, {{-S3, 5}}},        {5, 1, {{1, 6}}},        {5, 2, {{-1, 7}}},
      {5, 3, {{1, 4}}},          {5, 4, {{-1, 3}, {-S3, 8}}}, {5, 6, {{-1, 1}}},
      {5, 7, {{-1, 2}}},         {5, 8, {{S3, 4}}},       {6, 1, {{-1, 5}}},
      {6, 2, {{1, 4}}},          {6, 3, {{1, 7}}},        {6, 4, {{-1, 2}}},
      {6, 5, {{1, 1}}},          {6, 7, {{-1, 3}, {S3, 8}}}, {6, 8, {{-S3, 7}}},
      {7, 1, {{1, 4}}},          {7, 2, {{1, 5}}},        {7, 3, {{-1, 6}}},
      {7, 4, {{-1, 1}}},         {7, 5, {{1, 2}}},        {7, 6, {{1, 3}, {-S3, 8}}},
      {7, 8, {{S3, 6}}},         {8, 1, {}},              {8, 2, {}},
      {8, 3, {}},                {8, 4, {{S3, 5}}},       {8, 5, {{-S3, 4}}},
      {8, 6, {{S3, 7}}},         {8, 7, {{-S3, 6}}},
  };
  return v;
}

const std::vector<CommCell>& comm_table_nine_eleven() {
  static const std::vector<CommCell> v = {
      {1, 2, {{1, 9}, {S3, 11}}},   {1, 9, {{-1, 2}}},   {1, 4, {{1, 7}}},
      {1, 5, {{-1, 6}}},            {1, 6, {{1, 5}}},    {1, 7, {{-1, 4}}},
      {1, 11, {{-S3, 2}}},          {2, 1, {{-1, 9}, {-S3, 11}}}, {2, 9, {{1, 1}}},
      {2, 4, {{1, 6}}},             {2, 5, {{1, 7}}},    {2, 6, {{-1, 4}}},
      {2, 7, {{-1, 5}}},            {2, 11, {{S3, 1}}},  {9, 1, {{1, 2}}},
      {9, 2, {{-1, 1}}},            {9, 4, {{2, 5}}},    {9, 5, {{-2, 4}}},
      {9, 6, {{1, 7}}},             {9, 7, {{-1, 6}}},   {9, 11, {}},
      {4, 1, {{-1, 7}}},            {4, 2, {{-1, 6}}},   {4, 9, {{-2, 5}}},
      {4, 5, {{2, 9}}},             {4, 6, {{1, 2}}},    {4, 7, {{1, 1}}},
      {4, 11, {}},                  {5, 1, {{1, 6}}},    {5, 2, {{-1, 7}}},
      {5, 9, {{2, 4}}},             {5, 4, {{-2, 9}}},   {5, 6, {{-1, 1}}},
      {5, 7, {{1, 2}}},             {5, 11, {}},         {6, 1, {{-1, 5}}},
      {6, 2, {{1, 4}}},             {6, 9, {{-1, 7}}},   {6, 4, {{-1, 2}}},
      {6, 5, {{1, 1}}},             {6, 7, {{1, 9}, {-S3, 11}}}, {6, 11, {{S3, 7}}},
      {7, 1, {{1, 4}}},             {7, 2, {{1, 5}}},    {7, 9, {{1, 6}}},
      {7, 4, {{-1, 1}}},            {7, 5, {{-1, 2}}},   {7, 6, {{-1, 9}, {S3, 11}}},
      {7, 11, {{-S3, 6}}},          {11, 1, {{S3, 2}}},  {11, 2, {{-S3, 1}}},
      {11, 9, {}},                  {11, 4, {}},         {11, 5, {}},
      {11, 6, {{-S3, 7}}},          {11, 7, {{S3, 6}}},  {11, 11, {}},
  };
  return v;
}

const std::vector<CommCell>& comm_table_ten_twelve() {
  static const std::vector<CommCell> v = {
      {1, 2, {{-1, 10}, {S3, 12}}}, {1, 10, {{1, 2}}},   {1, 4, {{1, 7}}},
      {1, 5, {{-1, 6}}},            {1, 6, {{1, 5}}},    {1, 7, {{-1, 4}}},
      {1, 12, {{S3, 2}}},           {2, 1, {{1, 10}, {-S3, 12}}}, {2, 10, {{-1, 1}}},
      {2, 4, {{1, 6}}},             {2, 5, {{1, 7}}},    {2, 6, {{-1, 4}}},
      {2, 7, {{-1, 5}}},            {2, 12, {{-S3, 2}}}, {10, 1, {{-1, 2}}},
      {10, 2, {{1, 1}}},            {10, 4, {{1, 5}}},   {10, 5, {{-1, 4}}},
      {10, 6, {{2, 7}}},            {10, 7, {{-2, 6}}},  {10, 12, {}},
      {4, 1, {{-1, 7}}},            {4, 2, {{-1, 6}}},   {4, 10, {{-1, 5}}},
      {4, 5, {{1, 10}, {-S3, 12}}}, {4, 6, {{1, 2}}},    {4, 7, {{1, 1}}},
      {4, 12, {{S3, 5}}},           {5, 1, {{1, 6}}},    {5, 2, {{-1, 7}}},
      {5, 10, {{1, 4}}},            {5, 4, {{-1, 10}, {S3, 12}}}, {5, 6, {{-1, 1}}},
      {5, 7, {{1, 2}}},             {5, 12, {{-S3, 4}}}, {6, 1, {{-1, 5}}},
      {6, 2, {{1, 4}}},             {6, 10, {{-2, 7}}},  {6, 4, {{-1, 2}}},
      {6, 5, {{1, 1}}},             {6, 7, {{2, 10}}},   {6, 12, {}},
      {7, 1, {{1, 4}}},             {7, 2, {{1, 5}}},    {7, 10, {{2, 6}}},
      {7, 4, {{-1, 1}}},            {7, 5, {{-1, 2}}},   {7, 6, {{-2, 10}}},
      {7, 12, {}},                  {12, 1, {{-S3, 2}}}, {12, 2, {{S3, 2}}},
      {12, 10, {}},                 {12, 4, {{-S3, 5}}}, {12, 5, {{S3, 4}}},
      {12, 6, {}},                  {12, 7, {}},         {12, 12, {}},
  };
  return v;
}

CMat3 cell_matrix(const CommCell& cell) {
  CMat3 m;
  for (const auto& t : cell.terms) m = m + Cx(0.0, t.coef) * gell(t.index);
  return m;
}

std::string cell_string(const std::vector<CommTerm>& terms) {
  if (terms.empty()) return "0";
  std::string s = "i*(";
  bool first = true;
  for (const auto& t : terms) {
    if (!first) s += t.coef >= 0 ? " + " : " - ";
    else if (t.coef < 0) s += "-";
    s += fmt_num(std::abs(t.coef)) + "*g" + std::to_string(t.index);
    first = false;
  }
  return s + ")";
}

// Describes -i*[a, b] decomposed over the variant basis as "i*(...)" terms.
std::string comm_string(const CMat3& comm, DiagonalVariant v) {
  CMat3 h = Cx(0.0, -1.0) * comm;
  h = 0.5 * (h + adjoint(h));
  GellCoeffs gc = decompose(h, v);
  std::array<int, 9> idx = basis_indices(v);
  std::vector<CommTerm> terms;
  for (int s = 0; s < 9; ++s) {
    double c = gc.c[static_cast<std::size_t>(s)];
    if (std::abs(c) > 1e-9) terms.push_back({c, idx[static_cast<std::size_t>(s)]});
  }
  return cell_string(terms);
}

void audit_const_list(DiscrepancyReport& rep, const char* label, const std::vector<ConstEntry>& list,
                      double (*fn)(int, int, int), const char* sym) {
  for (const auto& e : list) {
    double got = fn(e.i, e.j, e.k);
    DiscrepancyEntry de;
    de.item = std::string(label) + " " + sym + "(" + std::to_string(e.i) + "," +
              std::to_string(e.j) + "," + std::to_string(e.k) + ")";
    de.printed = fmt_num(e.value);
    de.recomputed = fmt_num(got);
    de.delta = std::abs(got - e.value);
    de.match = de.delta <= 1e-12;
    rep.entries.push_back(std::move(de));
  }
}

void audit_comm_table(DiscrepancyReport& rep, const char* label, const std::vector<CommCell>& table,
                      DiagonalVariant v) {
  for (const auto& cell : table) {
    CMat3 truth = commutator(gell(cell.i), gell(cell.j));
    CMat3 printed = cell_matrix(cell);
    DiscrepancyEntry de;
    de.item = std::string(label) + " [g" + std::to_string(cell.i) + ",g" +
              std::to_string(cell.j) + "]";
    de.printed = cell_string(cell.terms);
    de.recomputed = comm_string(truth, v);
    de.delta = frobenius_distance(printed, truth);
    de.match = de.delta <= 1e-12;
    rep.entries.push_back(std::move(de));
  }
}

}  // namespace

const CMat3& gell(int i) {
  check_index(i);
  return basis()[static_cast<std::size_t>(i)];
}

std::array<int, 2> diagonal_pair(DiagonalVariant v) {
  switch (v) {
    case DiagonalVariant::Standard: return {3, 8};
    case DiagonalVariant::NineEleven: return {9, 11};
    case DiagonalVariant::TenTwelve: return {10, 12};
  }
  throw UnknownSplit("diagonal_pair: invalid variant");
}

std::array<int, 9> basis_indices(DiagonalVariant v) {
  std::array<int, 2> d = diagonal_pair(v);
  return {0, 1, 2, d[0], 4, 5, 6, 7, d[1]};
}

GellCoeffs decompose(const CMat3& h, DiagonalVariant v) {
  if (!is_hermitian(h, 1e-12)) throw NotHermitian("decompose: input is not Hermitian");
  GellCoeffs out;
  out.variant = v;
  std::array<int, 9> idx = basis_indices(v);
  for (int s : {0, 1, 2, 4, 5, 6, 7})
    out.c[static_cast<std::size_t>(s)] = hs_inner(gell(idx[static_cast<std::size_t>(s)]), h) / 2.0;
  // Diagonal pair through a 2x2 Gram solve; the pairs happen to be
  // orthogonal, but this stays correct for any independent pair.
  std::array<int, 2> d = diagonal_pair(v);
  std::vector<std::vector<double>> g = {
      {hs_inner(gell(d[0]), gell(d[0])), hs_inner(gell(d[0]), gell(d[1]))},
      {hs_inner(gell(d[1]), gell(d[0])), hs_inner(gell(d[1]), gell(d[1]))}};
  std::vector<double> rhs = {hs_inner(gell(d[0]), h), hs_inner(gell(d[1]), h)};
  std::vector<double> c = solve_dense(std::move(g), std::move(rhs));
  out.c[3] = c[0];
  out.c[8] = c[1];
  return out;
}

CMat3 compose(const GellCoeffs& coeffs) {
  std::array<int, 9> idx = basis_indices(coeffs.variant);
  CMat3 m;
  for (int s = 0; s < 9; ++s)
    m = m + coeffs.c[static_cast<std::size_t>(s)] * gell(idx[static_cast<std::size_t>(s)]);
  return m;
}

double f_constant(int i, int j, int k) {
  check_index(i);
  check_index(j);
  check_index(k);
  Cx t = trace(commutator(gell(i), gell(j)) * gell(k));
  return std::real(t / Cx(0.0, 4.0));
}

double d_constant(int i, int j, int k) {
  check_index(i);
  check_index(j);
  check_index(k);
  Cx t = trace(anticommutator(gell(i), gell(j)) * gell(k));
  return std::real(t) / 4.0;
}

bool check_cartan_split(const std::vector<int>& k_indices, const std::vector<int>& p_indices) {
  for (int i : k_indices) check_index(i);
  for (int i : p_indices) check_index(i);
  struct Rule {
    const std::vector<int>*a, *b, *target;
  };
  const Rule rules[] = {{&k_indices, &k_indices, &k_indices},
                        {&p_indices, &p_indices, &k_indices},
                        {&p_indices, &k_indices, &p_indices}};
  for (const Rule& r : rules) {
    for (int i : *r.a) {
      for (int j : *r.b) {
        CMat3 c = commutator(gell(i), gell(j));
        CMat3 h = Cx(0.0, -1.0) * c;
        h = 0.5 * (h + adjoint(h));
        if (frobenius_norm(h) < 1e-14) continue;
        if (span_residual(h, *r.target) > kSpanTol * std::max(1.0, frobenius_norm(h)))
          return false;
      }
    }
  }
  return true;
}

DiscrepancyReport verify_constant_tables() {
  DiscrepancyReport rep;
  audit_const_list(rep, "standard list", f_list_standard(), &f_constant, "f");
  audit_const_list(rep, "standard list", d_list_standard(), &d_constant, "d");
  audit_comm_table(rep, "commutator table standard", comm_table_standard(),
                   DiagonalVariant::Standard);
  audit_comm_table(rep, "commutator table 9-11", comm_table_nine_eleven(),
                   DiagonalVariant::NineEleven);
  audit_comm_table(rep, "commutator table 10-12", comm_table_ten_twelve(),
                   DiagonalVariant::TenTwelve);
  audit_const_list(rep, "list 9-11", f_list_nine_eleven(), &f_constant, "f");
  audit_const_list(rep, "list 9-11", d_list_nine_eleven(), &d_constant, "d");
  audit_const_list(rep, "list 10-12", f_list_ten_twelve(), &f_constant, "f");
  audit_const_list(rep, "list 10-12", d_list_ten_twelve(), &d_constant, "d");
  return rep;
}

}  // namespace su3forge
