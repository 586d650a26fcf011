#include "koiso/tensor.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace koiso {

namespace {

std::size_t pow_size(int n, int rank) {
    std::size_t s = 1;
    for (int i = 0; i < rank; ++i) s *= static_cast<std::size_t>(n);
    return s;
}

// odometer over `dims` base-n digits; returns false after the last index
bool advance_odometer(std::span<int> idx, int n) {
    for (int d = static_cast<int>(idx.size()) - 1; d >= 0; --d) {
        if (++idx[static_cast<std::size_t>(d)] < n) return true;
        idx[static_cast<std::size_t>(d)] = 0;
    }
    return false;
}

void check_same_n(const ComplexTensor& a, const ComplexTensor& b, const char* what) {
    if (a.n() != b.n())
        throw std::invalid_argument(std::string(what) + ": chart dimension mismatch");
}

void check_metric_shapes(int n, const ComplexTensor& metric, const ComplexTensor& inverse_metric) {
    if (metric.n() != n || metric.signature() != sig_metric())
        throw std::invalid_argument("contract: metric must be rank-2 (lower holo, lower anti)");
    if (inverse_metric.n() != n || inverse_metric.signature() != sig_inverse_metric())
        throw std::invalid_argument("contract: inverse metric must be rank-2 (upper holo, upper anti)");
}

enum class PairKind { Direct, ViaInverse, ViaMetric };

struct BoundPair {
    PairKind kind;
    int a_slot;
    int b_slot;
    bool a_is_holo;  // for metric-mediated pairs: which side supplies the holo index
};

PairKind classify(const Slot& sa, const Slot& sb) {
    if (sa.type == sb.type) {
        if (sa.variance != sb.variance) return PairKind::Direct;
        throw std::invalid_argument("contract: same-type slots need opposite variance");
    }
    if (sa.variance == Variance::Lower && sb.variance == Variance::Lower)
        return PairKind::ViaInverse;
    if (sa.variance == Variance::Upper && sb.variance == Variance::Upper)
        return PairKind::ViaMetric;
    throw std::invalid_argument("contract: cross-type slots must share variance (metric-mediated)");
}

}  // namespace

ComplexTensor::ComplexTensor(int n, IndexSignature sig)
    : n_(n), sig_(std::move(sig)), data_(pow_size(n, sig_.rank()), Complex(0.0, 0.0)) {
    if (n <= 0) throw std::invalid_argument("ComplexTensor: dimension must be positive");
}

ComplexTensor ComplexTensor::scalar(int n, Complex value) {
    ComplexTensor t(n, IndexSignature{});
    t.data_[0] = value;
    return t;
}

std::size_t ComplexTensor::offset_unchecked(std::span<const int> idx) const {
    if (static_cast<int>(idx.size()) != rank())
        throw std::invalid_argument("ComplexTensor: index count does not match rank");
    std::size_t off = 0;
    for (int i : idx) {
        if (i < 0 || i >= n_) throw std::out_of_range("ComplexTensor: index out of range");
        off = off * static_cast<std::size_t>(n_) + static_cast<std::size_t>(i);
    }
    return off;
}

Complex ComplexTensor::at(std::span<const int> idx) const { return data_[offset_unchecked(idx)]; }

Complex& ComplexTensor::at(std::span<const int> idx) { return data_[offset_unchecked(idx)]; }

ConstMatrixMap ComplexTensor::matrix() const {
    if (rank() != 2) throw std::invalid_argument("ComplexTensor::matrix: rank-2 only");
    return ConstMatrixMap(data_.data(), n_, n_);
}

MatrixMap ComplexTensor::matrix() {
    if (rank() != 2) throw std::invalid_argument("ComplexTensor::matrix: rank-2 only");
    return MatrixMap(data_.data(), n_, n_);
}

double ComplexTensor::max_abs() const {
    double m = 0.0;
    for (const Complex& v : data_) m = std::max(m, std::abs(v));
    return m;
}

ComplexTensor operator+(const ComplexTensor& a, const ComplexTensor& b) {
    check_same_n(a, b, "tensor sum");
    if (a.signature() != b.signature())
        throw std::invalid_argument("tensor sum: signature mismatch");
    ComplexTensor out = a;
    for (std::size_t i = 0; i < out.data_.size(); ++i) out.data_[i] += b.data_[i];
    return out;
}

ComplexTensor operator-(const ComplexTensor& a, const ComplexTensor& b) {
    check_same_n(a, b, "tensor difference");
    if (a.signature() != b.signature())
        throw std::invalid_argument("tensor difference: signature mismatch");
    ComplexTensor out = a;
    for (std::size_t i = 0; i < out.data_.size(); ++i) out.data_[i] -= b.data_[i];
    return out;
}

ComplexTensor operator*(Complex s, ComplexTensor t) {
    for (Complex& v : t.data_) v *= s;
    return t;
}

ComplexTensor contract(const ComplexTensor& a, const ComplexTensor& b,
                       std::span<const std::pair<int, int>> pairs,
                       const ComplexTensor& metric, const ComplexTensor& inverse_metric) {
    check_same_n(a, b, "contract");
    const int n = a.n();
    check_metric_shapes(n, metric, inverse_metric);

    std::vector<bool> a_bound(static_cast<std::size_t>(a.rank()), false);
    std::vector<bool> b_bound(static_cast<std::size_t>(b.rank()), false);
    std::vector<BoundPair> bound;
    bound.reserve(pairs.size());
    for (const auto& [sa, sb] : pairs) {
        if (sa < 0 || sa >= a.rank() || sb < 0 || sb >= b.rank())
            throw std::invalid_argument("contract: slot index out of range");
        if (a_bound[static_cast<std::size_t>(sa)] || b_bound[static_cast<std::size_t>(sb)])
            throw std::invalid_argument("contract: slot paired twice");
        a_bound[static_cast<std::size_t>(sa)] = true;
        b_bound[static_cast<std::size_t>(sb)] = true;
        const Slot& slot_a = a.signature().slot(sa);
        const Slot& slot_b = b.signature().slot(sb);
        bound.push_back({classify(slot_a, slot_b), sa, sb,
                         slot_a.type == SlotType::Holomorphic});
    }

    std::vector<int> a_free, b_free;
    std::vector<Slot> out_slots;
    for (int i = 0; i < a.rank(); ++i)
        if (!a_bound[static_cast<std::size_t>(i)]) {
            a_free.push_back(i);
            out_slots.push_back(a.signature().slot(i));
        }
    for (int i = 0; i < b.rank(); ++i)
        if (!b_bound[static_cast<std::size_t>(i)]) {
            b_free.push_back(i);
            out_slots.push_back(b.signature().slot(i));
        }

    ComplexTensor out(n, IndexSignature(std::move(out_slots)));

    // one summation variable per direct pair, two per metric-mediated pair
    int n_sum = 0;
    for (const BoundPair& bp : bound) n_sum += (bp.kind == PairKind::Direct) ? 1 : 2;

    std::vector<int> ia(static_cast<std::size_t>(a.rank()), 0);
    std::vector<int> ib(static_cast<std::size_t>(b.rank()), 0);
    std::vector<int> free_idx(a_free.size() + b_free.size(), 0);
    std::vector<int> sum_idx(static_cast<std::size_t>(n_sum), 0);

    auto body = [&]() {
        for (std::size_t i = 0; i < a_free.size(); ++i)
            ia[static_cast<std::size_t>(a_free[i])] = free_idx[i];
        for (std::size_t i = 0; i < b_free.size(); ++i)
            ib[static_cast<std::size_t>(b_free[i])] = free_idx[a_free.size() + i];

        Complex acc(0.0, 0.0);
        std::fill(sum_idx.begin(), sum_idx.end(), 0);
        do {
            Complex weight(1.0, 0.0);
            int v = 0;
            for (const BoundPair& bp : bound) {
                if (bp.kind == PairKind::Direct) {
                    ia[static_cast<std::size_t>(bp.a_slot)] = sum_idx[static_cast<std::size_t>(v)];
                    ib[static_cast<std::size_t>(bp.b_slot)] = sum_idx[static_cast<std::size_t>(v)];
                    ++v;
                } else {
                    const int va = sum_idx[static_cast<std::size_t>(v)];
                    const int vb = sum_idx[static_cast<std::size_t>(v + 1)];
                    ia[static_cast<std::size_t>(bp.a_slot)] = va;
                    ib[static_cast<std::size_t>(bp.b_slot)] = vb;
                    const int holo = bp.a_is_holo ? va : vb;
                    const int anti = bp.a_is_holo ? vb : va;
                    weight *= (bp.kind == PairKind::ViaInverse) ? inverse_metric(holo, anti)
                                                                : metric(holo, anti);
                    v += 2;
                }
            }
            acc += weight * a.at(ia) * b.at(ib);
        } while (n_sum > 0 && advance_odometer(sum_idx, n));
        out.at(free_idx) = acc;
    };

    if (free_idx.empty()) {
        body();
    } else {
        std::fill(free_idx.begin(), free_idx.end(), 0);
        do {
            body();
        } while (advance_odometer(free_idx, n));
    }
    return out;
}

ComplexTensor trace_pair(const ComplexTensor& t, int slot_i, int slot_j,
                         const ComplexTensor& metric, const ComplexTensor& inverse_metric) {
    const int n = t.n();
    check_metric_shapes(n, metric, inverse_metric);
    if (slot_i == slot_j || slot_i < 0 || slot_j < 0 || slot_i >= t.rank() || slot_j >= t.rank())
        throw std::invalid_argument("trace_pair: invalid slot indices");

    const Slot& si = t.signature().slot(slot_i);
    const Slot& sj = t.signature().slot(slot_j);
    const PairKind kind = classify(si, sj);
    const bool i_is_holo = si.type == SlotType::Holomorphic;

    std::vector<Slot> out_slots;
    std::vector<int> free_slots;
    for (int s = 0; s < t.rank(); ++s) {
        if (s == slot_i || s == slot_j) continue;
        free_slots.push_back(s);
        out_slots.push_back(t.signature().slot(s));
    }
    ComplexTensor out(n, IndexSignature(std::move(out_slots)));

    std::vector<int> it(static_cast<std::size_t>(t.rank()), 0);
    std::vector<int> free_idx(free_slots.size(), 0);
    const int n_sum = (kind == PairKind::Direct) ? 1 : 2;
    std::vector<int> sum_idx(static_cast<std::size_t>(n_sum), 0);

    auto body = [&]() {
        for (std::size_t i = 0; i < free_slots.size(); ++i)
            it[static_cast<std::size_t>(free_slots[i])] = free_idx[i];
        Complex acc(0.0, 0.0);
        std::fill(sum_idx.begin(), sum_idx.end(), 0);
        do {
            Complex weight(1.0, 0.0);
            if (kind == PairKind::Direct) {
                it[static_cast<std::size_t>(slot_i)] = sum_idx[0];
                it[static_cast<std::size_t>(slot_j)] = sum_idx[0];
            } else {
                it[static_cast<std::size_t>(slot_i)] = sum_idx[0];
                it[static_cast<std::size_t>(slot_j)] = sum_idx[1];
                const int holo = i_is_holo ? sum_idx[0] : sum_idx[1];
                const int anti = i_is_holo ? sum_idx[1] : sum_idx[0];
                weight = (kind == PairKind::ViaInverse) ? inverse_metric(holo, anti)
                                                        : metric(holo, anti);
            }
            acc += weight * t.at(it);
        } while (advance_odometer(sum_idx, n));
        out.at(free_idx) = acc;
    };

    if (free_idx.empty()) {
        body();
    } else {
        std::fill(free_idx.begin(), free_idx.end(), 0);
        do {
            body();
        } while (advance_odometer(free_idx, n));
    }
    return out;
}

ComplexTensor conjugate_transpose_pair(const ComplexTensor& t) {
    if (t.rank() != 2)
        throw std::invalid_argument("conjugate_transpose_pair: rank-2 tensor required");
    const Slot& s0 = t.signature().slot(0);
    const Slot& s1 = t.signature().slot(1);
    if (s0.type == s1.type || s0.variance != s1.variance)
        throw std::invalid_argument(
            "conjugate_transpose_pair: needs one holomorphic and one antiholomorphic slot of equal variance");
    ComplexTensor out(t.n(), t.signature());
    for (int k = 0; k < t.n(); ++k)
        for (int l = 0; l < t.n(); ++l) out(k, l) = std::conj(t(l, k));
    return out;
}

namespace {

ComplexTensor move_index(const ComplexTensor& t, int slot, const ComplexTensor& table,
                         bool raising) {
    if (slot < 0 || slot >= t.rank())
        throw std::invalid_argument("raise/lower: slot index out of range");
    const Slot& s = t.signature().slot(slot);
    if (raising && s.variance != Variance::Lower)
        throw std::invalid_argument("raise_slot: slot is already upper");
    if (!raising && s.variance != Variance::Upper)
        throw std::invalid_argument("lower_slot: slot is already lower");

    const bool was_holo = s.type == SlotType::Holomorphic;
    std::vector<Slot> out_slots = t.signature().slots();
    out_slots[static_cast<std::size_t>(slot)] = Slot{
        raising ? Variance::Upper : Variance::Lower,
        was_holo ? SlotType::Antiholomorphic : SlotType::Holomorphic};

    const int n = t.n();
    ComplexTensor out(n, IndexSignature(std::move(out_slots)));
    std::vector<int> idx(static_cast<std::size_t>(t.rank()), 0);
    std::vector<int> src(static_cast<std::size_t>(t.rank()), 0);
    do {
        src = idx;
        Complex acc(0.0, 0.0);
        const int out_i = idx[static_cast<std::size_t>(slot)];
        for (int m = 0; m < n; ++m) {
            src[static_cast<std::size_t>(slot)] = m;
            // table(k, l) carries (holo, anti) index order for both g and g^{-1}
            const Complex w = was_holo ? table(m, out_i) : table(out_i, m);
            acc += w * t.at(src);
        }
        out.at(idx) = acc;
    } while (advance_odometer(idx, n));
    return out;
}

}  // namespace

ComplexTensor raise_slot(const ComplexTensor& t, int slot, const ComplexTensor& inverse_metric) {
    if (inverse_metric.signature() != sig_inverse_metric() || inverse_metric.n() != t.n())
        throw std::invalid_argument("raise_slot: inverse metric has wrong shape");
    return move_index(t, slot, inverse_metric, /*raising=*/true);
}

ComplexTensor lower_slot(const ComplexTensor& t, int slot, const ComplexTensor& metric) {
    if (metric.signature() != sig_metric() || metric.n() != t.n())
        throw std::invalid_argument("lower_slot: metric has wrong shape");
    return move_index(t, slot, metric, /*raising=*/false);
}

}  // namespace koiso
