#include "dminimax/analysis.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <sstream>

#include "dminimax/topology.hpp"

namespace dminimax {

TheoremConstants compute_constants(const ConstantInputs& in) {
  auto fail = [](const char* which, const std::string& detail) {
    throw hypothesis_error(which, detail);
  };
  if (!(in.G0 > 0.0)) fail("moment init range", "G0 must be > 0 (hypothesis unmet for zero v_tilde init)");
  if (!(in.G0 <= in.G_inf)) fail("moment init range", "G0 must be <= G_inf");
  if (!(in.L >= 0.0) || !(in.sigma >= 0.0) || !(in.D > 0.0))
    fail("constant range", "L, sigma must be >= 0 and D > 0");
  if (!(in.rho >= 0.0 && in.rho < 1.0)) fail("mixing range", "rho must be in [0,1)");
  if (in.t < 1) fail("mixing range", "t must be >= 1");
  if (in.nodes < 1 || in.dim < 1) fail("constant range", "M and d must be >= 1");
  if (!(in.beta1_1 >= 0.0 && in.beta1_1 < 1.0) ||
      !(in.beta2 >= 0.0 && in.beta2 < 1.0) ||
      !(in.beta3 >= 0.0 && in.beta3 < 1.0))
    fail("beta range", "beta1_1, beta2, beta3 must be in [0,1)");
  if (in.beta1_1 > 0.0 && !(in.lambda_decay > 0.0 && in.lambda_decay < 1.0))
    fail("lambda range", "lambda must be in (0,1) when beta1_1 > 0");
  if (!(in.eta > 0.0)) fail("step-size bound", "eta must be > 0");

  TheoremConstants tc;
  tc.in = in;
  tc.gamma = in.beta1_1 == 0.0 ? 0.0 : in.beta1_1 / in.beta2;
  if (!(tc.gamma <= 1.0)) fail("gamma bound", "beta1_1 / beta2 must be <= 1");
  tc.u_c = (1.0 - in.beta3) * (1.0 - in.beta1_1) * (1.0 - in.beta2) *
           (1.0 - tc.gamma);

  const double eta_max = std::sqrt(in.G0 * in.G0 * in.G0 /
                                   (72.0 * in.L * in.L * in.G_inf));
  if (in.eta > eta_max) {
    std::ostringstream os;
    os << "eta = " << in.eta << " exceeds sqrt(G0^3/(72 L^2 G_inf)) = " << eta_max;
    fail("step-size bound", os.str());
  }
  const double beta1_max =
      1.0 / (1.0 + std::sqrt(108.0 * in.G_inf / (in.nodes * in.G0 * in.G0 * in.G0)));
  if (in.beta1_1 > beta1_max) {
    std::ostringstream os;
    os << "beta1_1 = " << in.beta1_1 << " exceeds 1/(1+sqrt(108 G_inf/(M G0^3))) = "
       << beta1_max;
    fail("beta1 bound", os.str());
  }

  const double eta = in.eta, b1 = in.beta1_1, kap = in.lambda_decay;
  const double G0 = in.G0, Gi = in.G_inf, L = in.L, D = in.D;
  const double M = static_cast<double>(in.nodes);
  const double d = static_cast<double>(in.dim);
  const double rt = std::pow(in.rho, in.t);
  const double r2t = std::pow(in.rho, 2 * in.t);
  const double uc = tc.u_c;

  tc.C0 = eta * eta * (1.0 - b1) * (1.0 - b1) / (Gi * Gi) -
          108.0 * b1 * b1 * eta * eta * Gi / (M * G0 * G0 * G0);

  // every beta1-proportional term vanishes identically at beta1_1 = 0,
  // which also sidesteps the 1/(1-kappa) factors for constant schedules
  double C1 = 6.0 * d / (std::sqrt(M) * G0) +
              12.0 * eta * D * Gi / G0 * (std::sqrt(M) * Gi * d / (G0 * G0)) +
              108.0 * eta * eta * d * Gi * Gi * Gi / (G0 * G0 * G0);
  if (b1 > 0.0) {
    C1 += 9.0 * eta * eta * d * b1 * b1 / (uc * (1.0 - kap * kap));
    C1 += 18.0 * std::pow(eta, 4) * L * L * M * d * b1 * b1 * r2t /
          (uc * G0 * G0 * (1.0 - kap * kap) * (1.0 - r2t));
    C1 += 6.0 * eta * std::sqrt(d / uc) * r2t * b1 /
          (D * (1.0 - rt) * (1.0 - kap) * G0);
    C1 += 12.0 * eta * D * Gi / G0 * (b1 / (1.0 - kap) * std::sqrt(d / uc));
    C1 += 216.0 * eta * eta * d * b1 * b1 * Gi / (uc * (1.0 - kap * kap) * G0);
    C1 += 432.0 * std::pow(eta, 4) * L * L * Gi / (G0 * G0 * G0) *
          (M * d * b1 * b1 * r2t / (uc * (1.0 - kap * kap) * (1.0 - r2t)));
  }
  tc.C1 = C1;

  tc.C2 = 9.0 * eta * eta / (G0 * G0) +
          216.0 * eta * eta * Gi / (G0 * G0 * G0);

  tc.C3 = 18.0 * std::pow(eta, 4) * L * L / (G0 * G0) * d / (1.0 - in.beta2) +
          6.0 * eta * Gi * std::sqrt(d) / (M * D) +
          432.0 * std::pow(eta, 4) * L * L / (G0 * G0) * Gi / G0 * d /
              (1.0 - in.beta2);

  if (!(tc.C0 > 0.0)) {
    std::ostringstream os;
    os << "C0 = " << tc.C0 << " <= 0; the B ratios are undefined";
    fail("C0 positive", os.str());
  }
  tc.B1 = tc.C1 / tc.C0;
  tc.B2 = tc.C2 / tc.C0;
  tc.B3 = tc.C3 / tc.C0;
  return tc;
}

double theorem_bound(const TheoremConstants& tc, long N,
                     const BatchSchedule& schedule) {
  if (N < 1) throw std::invalid_argument("theorem_bound: N must be >= 1");
  const double sigma2 = tc.in.sigma * tc.in.sigma;
  double noise_sum = 0.0;
  if (schedule.growing) {
    for (long k = 1; k <= N; ++k)
      noise_sum += sigma2 / static_cast<double>(k + 1);
  } else {
    if (schedule.constant < 1)
      throw std::invalid_argument("theorem_bound: batch must be >= 1");
    noise_sum = static_cast<double>(N) * sigma2 / schedule.constant;
  }
  const double rt = std::pow(tc.in.rho, tc.in.t);
  const double network = rt > 0.0 ? tc.B3 * tc.in.nodes * rt / (1.0 - rt) : 0.0;
  return tc.B1 / static_cast<double>(N) +
         tc.B2 / (tc.in.nodes * static_cast<double>(N)) * noise_sum + network;
}

ComplexitySetting complexity_setting(ComplexityRow row, double epsilon,
                                     double rho) {
  if (!(epsilon > 0.0 && epsilon <= 1.0))
    throw std::invalid_argument("complexity_setting: epsilon must be in (0,1]");
  const double inv2 = 1.0 / (epsilon * epsilon);
  ComplexitySetting s;
  s.N = static_cast<long>(std::ceil(inv2));
  switch (row) {
    case ComplexityRow::fixed_batch:
      s.batch = static_cast<long>(std::ceil(inv2));
      s.nodes = 1;
      s.C = inv2;
      break;
    case ComplexityRow::growing_batch:
      s.batch = 2;  // k+1 starting at k=1
      s.growing = true;
      s.nodes = 1;
      s.C = inv2;
      break;
    case ComplexityRow::many_nodes:
      s.batch = 1;
      s.nodes = static_cast<long>(std::ceil(inv2));
      s.C = inv2 * inv2;
      break;
  }
  s.t = required_gossip_steps(rho, s.C);
  return s;
}

namespace {

struct Mat {
  int rows, cols;
  std::vector<double> a;  // row-major
  double& at(int i, int j) { return a[static_cast<std::size_t>(i) * cols + j]; }
  double at(int i, int j) const { return a[static_cast<std::size_t>(i) * cols + j]; }
};

Mat random_mat(int rows, int cols, RngStream& rng) {
  Mat m{rows, cols, std::vector<double>(static_cast<std::size_t>(rows) * cols)};
  for (auto& v : m.a) v = 4.0 * rng.uniform() - 2.0;
  return m;
}

double frob(const Mat& m) {
  double s = 0.0;
  for (double v : m.a) s += v * v;
  return std::sqrt(s);
}

double max_abs(const Mat& m) {
  double s = 0.0;
  for (double v : m.a) s = std::max(s, std::abs(v));
  return s;
}

double one_one(const Mat& m) {
  double s = 0.0;
  for (double v : m.a) s += std::abs(v);
  return s;
}

double spec(const Mat& m) {
  Eigen::MatrixXd e(m.rows, m.cols);
  for (int i = 0; i < m.rows; ++i)
    for (int j = 0; j < m.cols; ++j) e(i, j) = m.at(i, j);
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(e);
  return svd.singularValues()(0);
}

Mat hadamard(const Mat& a, const Mat& b) {
  Mat out = a;
  for (std::size_t i = 0; i < out.a.size(); ++i) out.a[i] *= b.a[i];
  return out;
}

double col_norm(const Mat& m, int j) {
  double s = 0.0;
  for (int i = 0; i < m.rows; ++i) s += m.at(i, j) * m.at(i, j);
  return std::sqrt(s);
}

// || (1/M) (A o B) 1 ||
double row_mean_norm(const Mat& m) {
  double s = 0.0;
  for (int i = 0; i < m.rows; ++i) {
    double rs = 0.0;
    for (int j = 0; j < m.cols; ++j) rs += m.at(i, j);
    rs /= m.cols;
    s += rs * rs;
  }
  return std::sqrt(s);
}

std::string dump(const Mat& a, const Mat& b, const char* item) {
  std::ostringstream os;
  os.precision(17);
  os << "inequality " << item << "\nA =\n";
  for (int i = 0; i < a.rows; ++i) {
    for (int j = 0; j < a.cols; ++j) os << a.at(i, j) << " ";
    os << "\n";
  }
  os << "B =\n";
  for (int i = 0; i < b.rows; ++i) {
    for (int j = 0; j < b.cols; ++j) os << b.at(i, j) << " ";
    os << "\n";
  }
  return os.str();
}

}  // namespace

HadamardReport hadamard_property_suite(int trials, int rows, int cols,
                                       RngStream& rng) {
  if (trials < 1)
    throw std::invalid_argument("hadamard_property_suite: trials must be >= 1");
  HadamardReport report;
  report.trials = trials;
  const double slack = 1e-10;

  auto check = [&](double lhs, double rhs, const Mat& a, const Mat& b,
                   const char* item) {
    const double margin = (rhs - lhs) / std::max(1.0, std::abs(rhs));
    if (margin < report.worst_relative_slack) {
      report.worst_relative_slack = margin;
      if (lhs > rhs + slack * std::max(1.0, std::abs(rhs)))
        report.witness = dump(a, b, item);
    }
    if (lhs > rhs + slack * std::max(1.0, std::abs(rhs))) report.violations += 1;
  };

  for (int trial = 0; trial < trials; ++trial) {
    const Mat A = random_mat(rows, cols, rng);
    const Mat B = random_mat(rows, cols, rng);
    const Mat AB = hadamard(A, B);

    // (i) || sum_i a_i ||^2 <= M sum_i ||a_i||^2 over the columns of A
    {
      double sum_sq = 0.0;
      std::vector<double> rowsum(rows, 0.0);
      for (int j = 0; j < cols; ++j) {
        const double cn = col_norm(A, j);
        sum_sq += cn * cn;
        for (int i = 0; i < rows; ++i) rowsum[i] += A.at(i, j);
      }
      double lhs = 0.0;
      for (double v : rowsum) lhs += v * v;
      check(lhs, cols * sum_sq, A, A, "(i)");
    }
    check(frob(AB), max_abs(A) * one_one(B), A, B, "(ii)");
    check(frob(AB), max_abs(A) * frob(B), A, B, "(iii)");
    check(spec(AB), spec(A) * spec(B), A, B, "(iv)");
    check(frob(AB), frob(A) * frob(B), A, B, "(v)");
    {
      const double lhs = row_mean_norm(AB);
      check(lhs * lhs, max_abs(A) * max_abs(A) * frob(B) * frob(B) / cols, A, B,
            "(vi)");
      double colsum = 0.0;
      for (int j = 0; j < cols; ++j) colsum += col_norm(B, j);
      check(lhs, max_abs(A) * colsum / cols, A, B, "(vii)");
    }
  }
  return report;
}

}  // namespace dminimax
