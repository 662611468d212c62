#include "otg/state.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numeric>
#include <random>
#include <set>
#include <sstream>

#include "otg/errors.hpp"

namespace otg {

RegisterLayout::RegisterLayout(std::vector<Register> regs) : registers(std::move(regs)) { validate(); }

RegisterLayout RegisterLayout::contiguous(const std::vector<std::pair<std::string, uint32_t>>& spec) {
    std::vector<Register> regs;
    uint32_t next = 0;
    for (const auto& [name, width] : spec) {
        Register r{name, {}};
        for (uint32_t i = 0; i < width; ++i) r.qubits.push_back(next++);
        regs.push_back(std::move(r));
    }
    return RegisterLayout(std::move(regs));
}

uint32_t RegisterLayout::total_qubits() const {
    uint32_t n = 0;
    for (const auto& r : registers) n += static_cast<uint32_t>(r.qubits.size());
    return n;
}

bool RegisterLayout::has(std::string_view name) const {
    return std::any_of(registers.begin(), registers.end(), [&](const Register& r) { return r.name == name; });
}

const RegisterLayout::Register& RegisterLayout::reg(std::string_view name) const {
    for (const auto& r : registers)
        if (r.name == name) return r;
    throw std::invalid_argument("layout: no register named '" + std::string(name) + "'");
}

std::vector<uint32_t> RegisterLayout::qubits_of(const std::vector<std::string>& names) const {
    std::vector<uint32_t> out;
    for (const auto& r : registers) {
        if (std::find(names.begin(), names.end(), r.name) != names.end())
            out.insert(out.end(), r.qubits.begin(), r.qubits.end());
    }
    for (const auto& n : names) reg(n); // assert every name exists
    return out;
}

RegisterLayout RegisterLayout::subset(const std::vector<std::string>& keep) const {
    std::vector<Register> regs;
    uint32_t next = 0;
    for (const auto& r : registers) {
        if (std::find(keep.begin(), keep.end(), r.name) == keep.end()) continue;
        Register nr{r.name, {}};
        for (size_t i = 0; i < r.qubits.size(); ++i) nr.qubits.push_back(next++);
        regs.push_back(std::move(nr));
    }
    for (const auto& n : keep) reg(n);
    return RegisterLayout(std::move(regs));
}

void RegisterLayout::validate() const {
    const uint32_t n = total_qubits();
    if (n == 0) throw std::invalid_argument("layout: empty");
    if (n > kMaxQubits)
        throw std::invalid_argument("layout: " + std::to_string(n) + " qubits exceeds the cap of " +
                                    std::to_string(kMaxQubits));
    std::vector<bool> seen(n, false);
    std::set<std::string> names;
    for (const auto& r : registers) {
        if (r.qubits.empty()) throw std::invalid_argument("layout: register '" + r.name + "' is empty");
        if (!names.insert(r.name).second) throw std::invalid_argument("layout: duplicate register '" + r.name + "'");
        for (uint32_t q : r.qubits) {
            if (q >= n || seen[q]) throw std::invalid_argument("layout: qubit ids must be a disjoint cover");
            seen[q] = true;
        }
    }
}

namespace bits {

uint32_t target_mask(uint32_t n, const std::vector<uint32_t>& targets) {
    uint32_t mask = 0;
    for (uint32_t q : targets) {
        if (q >= n) throw std::invalid_argument("targets: qubit id out of range");
        const uint32_t bit = 1u << (n - 1 - q);
        if (mask & bit) throw std::invalid_argument("targets: duplicate qubit id");
        mask |= bit;
    }
    return mask;
}

std::vector<uint32_t> scatter_table(uint32_t n, const std::vector<uint32_t>& targets) {
    const uint32_t k = static_cast<uint32_t>(targets.size());
    std::vector<uint32_t> table(1u << k);
    for (uint32_t s = 0; s < table.size(); ++s) {
        uint32_t out = 0;
        for (uint32_t i = 0; i < k; ++i)
            if ((s >> (k - 1 - i)) & 1u) out |= 1u << (n - 1 - targets[i]);
        table[s] = out;
    }
    return table;
}

std::vector<uint32_t> rest_indices(uint32_t n, uint32_t mask) {
    std::vector<uint32_t> out;
    out.reserve((1u << n) >> std::popcount(mask));
    for (uint32_t i = 0; i < (1u << n); ++i)
        if ((i & mask) == 0) out.push_back(i);
    return out;
}

uint32_t extract(uint32_t index, uint32_t n, const std::vector<uint32_t>& targets) {
    const uint32_t k = static_cast<uint32_t>(targets.size());
    uint32_t s = 0;
    for (uint32_t i = 0; i < k; ++i) s |= ((index >> (n - 1 - targets[i])) & 1u) << (k - 1 - i);
    return s;
}

} // namespace bits

BasisPermutation::BasisPermutation(std::vector<uint32_t> image) : map(std::move(image)) {
    if (map.empty() || (map.size() & (map.size() - 1)) != 0)
        throw std::invalid_argument("BasisPermutation: size must be a power of two");
    std::vector<bool> seen(map.size(), false);
    for (uint32_t v : map) {
        if (v >= map.size() || seen[v]) throw std::invalid_argument("BasisPermutation: not a bijection");
        seen[v] = true;
    }
}

BasisPermutation BasisPermutation::identity(uint32_t size) {
    std::vector<uint32_t> image(size);
    std::iota(image.begin(), image.end(), 0u);
    return BasisPermutation(std::move(image));
}

uint32_t BasisPermutation::qubits() const {
    uint32_t n = 0;
    while ((size_t{1} << n) < map.size()) ++n;
    return n;
}

BasisPermutation BasisPermutation::inverse() const {
    std::vector<uint32_t> inv(map.size());
    for (uint32_t i = 0; i < map.size(); ++i) inv[map[i]] = i;
    return BasisPermutation(std::move(inv));
}

BasisPermutation BasisPermutation::then(const BasisPermutation& next) const {
    if (next.map.size() != map.size()) throw std::invalid_argument("BasisPermutation: size mismatch in composition");
    std::vector<uint32_t> out(map.size());
    for (uint32_t i = 0; i < map.size(); ++i) out[i] = next.map[map[i]];
    return BasisPermutation(std::move(out));
}

Matrix BasisPermutation::to_matrix() const {
    Matrix m = Matrix::Zero(size(), size());
    for (uint32_t i = 0; i < size(); ++i) m(map[i], i) = 1.0;
    return m;
}

bool BasisPermutation::is_identity() const {
    for (uint32_t i = 0; i < size(); ++i)
        if (map[i] != i) return false;
    return true;
}

bool BasisPermutation::is_qubit_relabeling() const {
    // A wire permutation fixes 0, sends single-bit inputs to single-bit
    // outputs bijectively, and acts linearly over GF(2).
    const uint32_t n = qubits();
    if (map[0] != 0) return false;
    std::vector<uint32_t> images(n);
    uint32_t covered = 0;
    for (uint32_t b = 0; b < n; ++b) {
        const uint32_t y = map[1u << b];
        if (std::popcount(y) != 1) return false;
        images[b] = y;
        covered |= y;
    }
    if (std::popcount(covered) != static_cast<int>(n)) return false;
    for (uint32_t x = 0; x < size(); ++x) {
        uint32_t y = 0;
        for (uint32_t b = 0; b < n; ++b)
            if ((x >> b) & 1u) y |= images[b];
        if (map[x] != y) return false;
    }
    return true;
}

QuantumState QuantumState::zero(RegisterLayout layout) {
    layout.validate();
    const Eigen::Index d = Eigen::Index(1) << layout.total_qubits();
    Matrix rho = Matrix::Zero(d, d);
    rho(0, 0) = 1.0;
    return {std::move(layout), std::move(rho)};
}

QuantumState QuantumState::from_pure(RegisterLayout layout, const Vector& amplitudes) {
    layout.validate();
    const Eigen::Index d = Eigen::Index(1) << layout.total_qubits();
    if (amplitudes.size() != d) throw std::invalid_argument("from_pure: dimension mismatch");
    const double norm = amplitudes.norm();
    if (std::abs(norm - 1.0) > 1e-9) throw InvalidStateError("from_pure: amplitudes not normalized");
    return {std::move(layout), amplitudes * amplitudes.adjoint()};
}

QuantumState QuantumState::from_density(RegisterLayout layout, Matrix density) {
    layout.validate();
    const Eigen::Index d = Eigen::Index(1) << layout.total_qubits();
    if (density.rows() != d || density.cols() != d) throw std::invalid_argument("from_density: dimension mismatch");
    QuantumState s{std::move(layout), std::move(density)};
    s.validate();
    return s;
}

QuantumState QuantumState::maximally_mixed(RegisterLayout layout) {
    layout.validate();
    const Eigen::Index d = Eigen::Index(1) << layout.total_qubits();
    return {std::move(layout), Matrix::Identity(d, d) / static_cast<double>(d)};
}

void QuantumState::validate(double tol) const {
    if (std::abs(rho.trace().real() - 1.0) > tol || std::abs(rho.trace().imag()) > tol)
        throw InvalidStateError("state: trace is not 1");
    if ((rho - rho.adjoint()).cwiseAbs().maxCoeff() > tol)
        throw InvalidStateError("state: not Hermitian");
    Eigen::SelfAdjointEigenSolver<Matrix> es(rho, Eigen::EigenvaluesOnly);
    if (es.eigenvalues().minCoeff() < -1e-9)
        throw InvalidStateError("state: negative eigenvalue beyond tolerance");
}

QuantumState tensor(const QuantumState& a, const QuantumState& b) {
    std::vector<RegisterLayout::Register> regs = a.layout.registers;
    const uint32_t shift = a.layout.total_qubits();
    for (const auto& r : b.layout.registers) {
        RegisterLayout::Register nr{r.name, {}};
        for (uint32_t q : r.qubits) nr.qubits.push_back(q + shift);
        regs.push_back(std::move(nr));
    }
    RegisterLayout layout(std::move(regs));
    const Eigen::Index da = a.dim(), db = b.dim();
    Matrix rho(da * db, da * db);
    for (Eigen::Index i = 0; i < da; ++i)
        for (Eigen::Index j = 0; j < da; ++j)
            rho.block(i * db, j * db, db, db) = a.rho(i, j) * b.rho;
    return {std::move(layout), std::move(rho)};
}

namespace {

// out <- (U ⊗ 1) * in, with U acting on the listed target qubits.
void left_apply(const Matrix& u, const std::vector<uint32_t>& scatter, const std::vector<uint32_t>& rest,
                const Matrix& in, Matrix& out) {
    const uint32_t K = static_cast<uint32_t>(u.rows());
    const Eigen::Index d = in.rows();
    std::vector<Complex> v(K), w(K);
    for (Eigen::Index j = 0; j < d; ++j) {
        for (uint32_t r : rest) {
            for (uint32_t s = 0; s < K; ++s) v[s] = in(r | scatter[s], j);
            for (uint32_t sp = 0; sp < K; ++sp) {
                Complex acc = 0.0;
                for (uint32_t s = 0; s < K; ++s) acc += u(sp, s) * v[s];
                w[sp] = acc;
            }
            for (uint32_t sp = 0; sp < K; ++sp) out(r | scatter[sp], j) = w[sp];
        }
    }
}

void check_targets(const QuantumState& s, size_t op_dim, const std::vector<uint32_t>& targets) {
    if (op_dim != (size_t{1} << targets.size()))
        throw std::invalid_argument("apply: operator dimension does not match target count");
    bits::target_mask(s.qubit_count(), targets); // validates ids and uniqueness
}

} // namespace

QuantumState apply_unitary(const QuantumState& s, const Matrix& u, const std::vector<uint32_t>& targets) {
    if (u.rows() != u.cols()) throw std::invalid_argument("apply_unitary: operator not square");
    check_targets(s, static_cast<size_t>(u.rows()), targets);
    const Eigen::Index K = u.rows();
    if ((u * u.adjoint() - Matrix::Identity(K, K)).cwiseAbs().maxCoeff() > 1e-10)
        throw std::invalid_argument("apply_unitary: operator is not unitary");

    const uint32_t n = s.qubit_count();
    const uint32_t mask = bits::target_mask(n, targets);
    const auto scatter = bits::scatter_table(n, targets);
    const auto rest = bits::rest_indices(n, mask);

    Matrix t1(s.dim(), s.dim());
    left_apply(u, scatter, rest, s.rho, t1);
    t1.adjointInPlace(); // now rho * U†  (rho Hermitian)
    Matrix out(s.dim(), s.dim());
    left_apply(u, scatter, rest, t1, out); // U * rho * U†
    return {s.layout, std::move(out)};
}

QuantumState apply_unitary(const QuantumState& s, const Matrix& u, std::string_view reg) {
    return apply_unitary(s, u, s.layout.reg(reg).qubits);
}

QuantumState apply_permutation(const QuantumState& s, const BasisPermutation& p, const std::vector<uint32_t>& targets) {
    check_targets(s, p.map.size(), targets);
    const uint32_t n = s.qubit_count();
    const uint32_t mask = bits::target_mask(n, targets);
    const auto scatter = bits::scatter_table(n, targets);

    const uint32_t d = static_cast<uint32_t>(s.dim());
    std::vector<uint32_t> full(d);
    for (uint32_t i = 0; i < d; ++i) {
        const uint32_t sub = bits::extract(i, n, targets);
        full[i] = (i & ~mask) | scatter[p.map[sub]];
    }
    Matrix out(d, d);
    for (uint32_t j = 0; j < d; ++j)
        for (uint32_t i = 0; i < d; ++i) out(full[i], full[j]) = s.rho(i, j);
    return {s.layout, std::move(out)};
}

QuantumState apply_permutation(const QuantumState& s, const BasisPermutation& p, std::string_view reg) {
    return apply_permutation(s, p, s.layout.reg(reg).qubits);
}

QuantumState partial_trace(const QuantumState& s, const std::vector<std::string>& keep) {
    if (keep.empty()) throw std::invalid_argument("partial_trace: keep set is empty");
    RegisterLayout new_layout = s.layout.subset(keep);
    const std::vector<uint32_t> kept = s.layout.qubits_of(keep);
    if (kept.size() == s.qubit_count()) return {std::move(new_layout), s.rho};

    const uint32_t n = s.qubit_count();
    std::vector<uint32_t> traced;
    std::vector<bool> is_kept(n, false);
    for (uint32_t q : kept) is_kept[q] = true;
    for (uint32_t q = 0; q < n; ++q)
        if (!is_kept[q]) traced.push_back(q);

    const auto scatter_keep = bits::scatter_table(n, kept);
    const auto scatter_tr = bits::scatter_table(n, traced);
    const uint32_t dk = 1u << kept.size();
    const uint32_t dt = 1u << traced.size();

    Matrix out = Matrix::Zero(dk, dk);
    for (uint32_t b = 0; b < dk; ++b)
        for (uint32_t a = 0; a < dk; ++a) {
            Complex acc = 0.0;
            for (uint32_t t = 0; t < dt; ++t) acc += s.rho(scatter_keep[a] | scatter_tr[t], scatter_keep[b] | scatter_tr[t]);
            out(a, b) = acc;
        }
    return {std::move(new_layout), std::move(out)};
}

QuantumState reset_qubits(const QuantumState& s, const std::vector<uint32_t>& qubits, ResetMode mode) {
    if (qubits.empty()) return s;
    const uint32_t n = s.qubit_count();
    bits::target_mask(n, qubits);

    std::vector<uint32_t> rest;
    std::vector<bool> is_reset(n, false);
    for (uint32_t q : qubits) is_reset[q] = true;
    for (uint32_t q = 0; q < n; ++q)
        if (!is_reset[q]) rest.push_back(q);

    const auto scatter_q = bits::scatter_table(n, qubits);
    const auto scatter_r = bits::scatter_table(n, rest);
    const uint32_t dq = 1u << qubits.size();
    const uint32_t dr = 1u << rest.size();

    // Reduced state on the surviving qubits.
    Matrix red = Matrix::Zero(dr, dr);
    for (uint32_t b = 0; b < dr; ++b)
        for (uint32_t a = 0; a < dr; ++a) {
            Complex acc = 0.0;
            for (uint32_t t = 0; t < dq; ++t) acc += s.rho(scatter_r[a] | scatter_q[t], scatter_r[b] | scatter_q[t]);
            red(a, b) = acc;
        }

    Matrix out = Matrix::Zero(s.dim(), s.dim());
    if (mode == ResetMode::to_zero) {
        for (uint32_t b = 0; b < dr; ++b)
            for (uint32_t a = 0; a < dr; ++a) out(scatter_r[a], scatter_r[b]) = red(a, b);
    } else {
        const double w = 1.0 / static_cast<double>(dq);
        for (uint32_t b = 0; b < dr; ++b)
            for (uint32_t a = 0; a < dr; ++a)
                for (uint32_t t = 0; t < dq; ++t)
                    out(scatter_r[a] | scatter_q[t], scatter_r[b] | scatter_q[t]) = red(a, b) * w;
    }
    return {s.layout, std::move(out)};
}

double entropy_bits(const QuantumState& s) {
    // A purity this close to 1 pins the spectrum to a single unit eigenvalue;
    // skip the eigensolve (it dominates at 2^12).
    if (std::abs(s.purity() - 1.0) <= 1e-12) return 0.0;
    Eigen::SelfAdjointEigenSolver<Matrix> es(s.rho, Eigen::EigenvaluesOnly);
    double h = 0.0;
    for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i) {
        const double lam = es.eigenvalues()(i);
        if (lam < -1e-9) throw InvalidStateError("entropy: eigenvalue below -1e-9");
        if (lam > 0.0) h -= lam * std::log2(lam);
    }
    return h;
}

double conditional_entropy_bits(const QuantumState& s, const std::vector<std::string>& of,
                                const std::vector<std::string>& given) {
    std::vector<std::string> joint = of;
    for (const auto& g : given)
        if (std::find(joint.begin(), joint.end(), g) != joint.end())
            throw std::invalid_argument("conditional_entropy: registers must be disjoint");
    joint.insert(joint.end(), given.begin(), given.end());

    const bool covers_all = s.layout.qubits_of(joint).size() == s.qubit_count();
    const double h_joint = covers_all ? entropy_bits(s) : entropy_bits(partial_trace(s, joint));
    const double h_given = entropy_bits(partial_trace(s, given));
    return h_joint - h_given;
}

std::vector<double> measure_distribution(const QuantumState& s, std::string_view reg) {
    const auto& r = s.layout.reg(reg);
    const uint32_t n = s.qubit_count();
    std::vector<double> probs(size_t{1} << r.qubits.size(), 0.0);
    const uint32_t d = static_cast<uint32_t>(s.dim());
    for (uint32_t i = 0; i < d; ++i) probs[bits::extract(i, n, r.qubits)] += s.rho(i, i).real();
    double sum = std::accumulate(probs.begin(), probs.end(), 0.0);
    if (std::abs(sum - 1.0) > 1e-10) throw InvalidStateError("measure_distribution: probabilities do not sum to 1");
    return probs;
}

std::vector<uint32_t> sample_distribution(const std::vector<double>& probs, uint64_t seed, size_t count) {
    double sum = std::accumulate(probs.begin(), probs.end(), 0.0);
    if (std::abs(sum - 1.0) > 1e-8) throw std::invalid_argument("sample: distribution not normalized");
    std::vector<double> cdf(probs.size());
    double acc = 0.0;
    for (size_t i = 0; i < probs.size(); ++i) {
        if (probs[i] < 0.0) throw std::invalid_argument("sample: negative probability");
        acc += probs[i];
        cdf[i] = acc;
    }
    cdf.back() = 1.0;

    std::mt19937_64 rng(seed);
    std::vector<uint32_t> out;
    out.reserve(count);
    for (size_t i = 0; i < count; ++i) {
        // Portable uniform double in [0,1): top 53 bits of the engine output.
        const double u = static_cast<double>(rng() >> 11) * 0x1.0p-53;
        const auto it = std::upper_bound(cdf.begin(), cdf.end(), u);
        out.push_back(static_cast<uint32_t>(std::min<size_t>(it - cdf.begin(), probs.size() - 1)));
    }
    return out;
}

double trace_distance(const QuantumState& a, const QuantumState& b) {
    if (a.dim() != b.dim()) throw std::invalid_argument("trace_distance: dimension mismatch");
    Eigen::SelfAdjointEigenSolver<Matrix> es(a.rho - b.rho, Eigen::EigenvaluesOnly);
    return 0.5 * es.eigenvalues().cwiseAbs().sum();
}

double fidelity(const QuantumState& a, const QuantumState& b) {
    if (a.dim() != b.dim()) throw std::invalid_argument("fidelity: dimension mismatch");
    Eigen::SelfAdjointEigenSolver<Matrix> es(a.rho);
    Eigen::VectorXd lam = es.eigenvalues().cwiseMax(0.0).cwiseSqrt();
    Matrix sqrt_a = es.eigenvectors() * lam.asDiagonal() * es.eigenvectors().adjoint();
    Eigen::SelfAdjointEigenSolver<Matrix> inner(sqrt_a * b.rho * sqrt_a, Eigen::EigenvaluesOnly);
    double root_sum = 0.0;
    for (Eigen::Index i = 0; i < inner.eigenvalues().size(); ++i)
        root_sum += std::sqrt(std::max(0.0, inner.eigenvalues()(i)));
    return root_sum * root_sum;
}

Matrix hadamard_gate() {
    Matrix h(2, 2);
    const double s = 1.0 / std::sqrt(2.0);
    h << s, s, s, -s;
    return h;
}

Matrix cnot_gate() {
    Matrix m = Matrix::Zero(4, 4);
    m(0, 0) = m(1, 1) = m(3, 2) = m(2, 3) = 1.0;
    return m;
}

Matrix swap_gate() {
    Matrix m = Matrix::Zero(4, 4);
    m(0, 0) = m(2, 1) = m(1, 2) = m(3, 3) = 1.0;
    return m;
}

Matrix identity_gate(Eigen::Index dim) { return Matrix::Identity(dim, dim); }

std::string to_text(const QuantumState& s) {
    std::ostringstream out;
    for (const auto& r : s.layout.registers) out << r.name << '(' << r.qubits.size() << ") ";
    out << "\n" << s.rho << "\n";
    return out.str();
}

} // namespace otg
