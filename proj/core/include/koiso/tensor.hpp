#pragma once

#include <Eigen/Dense>

#include <complex>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <utility>
#include <vector>

namespace koiso {

using Complex = std::complex<double>;

using MatrixXc = Eigen::Matrix<Complex, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
using MatrixMap = Eigen::Map<MatrixXc>;
using ConstMatrixMap = Eigen::Map<const MatrixXc>;

enum class Variance : std::uint8_t { Upper, Lower };
enum class SlotType : std::uint8_t { Holomorphic, Antiholomorphic };

struct Slot {
    Variance variance;
    SlotType type;
    friend bool operator==(const Slot&, const Slot&) = default;
};

/// Ordered index slots of a tensor. Index bookkeeping is explicit so that a
/// mismatched contraction is a detectable error instead of a silent sign or
/// conjugation bug.
class IndexSignature {
public:
    IndexSignature() = default;
    IndexSignature(std::initializer_list<Slot> slots) : slots_(slots) {}
    explicit IndexSignature(std::vector<Slot> slots) : slots_(std::move(slots)) {}

    int rank() const { return static_cast<int>(slots_.size()); }
    const Slot& slot(int i) const { return slots_[static_cast<std::size_t>(i)]; }
    const std::vector<Slot>& slots() const { return slots_; }

    friend bool operator==(const IndexSignature&, const IndexSignature&) = default;

private:
    std::vector<Slot> slots_;
};

inline constexpr Slot kLowerHolo{Variance::Lower, SlotType::Holomorphic};
inline constexpr Slot kLowerAnti{Variance::Lower, SlotType::Antiholomorphic};
inline constexpr Slot kUpperHolo{Variance::Upper, SlotType::Holomorphic};
inline constexpr Slot kUpperAnti{Variance::Upper, SlotType::Antiholomorphic};

/// g_{k lbar}
inline IndexSignature sig_metric() { return {kLowerHolo, kLowerAnti}; }
/// g^{k lbar}
inline IndexSignature sig_inverse_metric() { return {kUpperHolo, kUpperAnti}; }
/// endomorphism H^k_l
inline IndexSignature sig_endomorphism() { return {kUpperHolo, kLowerHolo}; }

/// Dense pointwise tensor over the chart C^n: every slot has extent n,
/// components stored row-major. Values are immutable in spirit; operations
/// below are pure functions returning fresh tensors.
class ComplexTensor {
public:
    ComplexTensor(int n, IndexSignature sig);

    static ComplexTensor scalar(int n, Complex value);

    int n() const { return n_; }
    int rank() const { return sig_.rank(); }
    const IndexSignature& signature() const { return sig_; }

    Complex at(std::span<const int> idx) const;
    Complex& at(std::span<const int> idx);

    template <typename... I>
    Complex operator()(I... idx) const {
        const int buf[] = {static_cast<int>(idx)...};
        return at(std::span<const int>(buf, sizeof...(I)));
    }
    template <typename... I>
    Complex& operator()(I... idx) {
        const int buf[] = {static_cast<int>(idx)...};
        return at(std::span<const int>(buf, sizeof...(I)));
    }

    std::span<const Complex> data() const { return data_; }
    std::span<Complex> data() { return data_; }

    /// Rank-2 tensors as n x n matrices, row index = first slot.
    ConstMatrixMap matrix() const;
    MatrixMap matrix();

    double max_abs() const;

    friend ComplexTensor operator+(const ComplexTensor& a, const ComplexTensor& b);
    friend ComplexTensor operator-(const ComplexTensor& a, const ComplexTensor& b);
    friend ComplexTensor operator*(Complex s, ComplexTensor t);

private:
    std::size_t offset_unchecked(std::span<const int> idx) const;

    int n_ = 0;
    IndexSignature sig_;
    std::vector<Complex> data_;
};

/// Contract `a` and `b` over the given slot pairs (first of a pair indexes a
/// slot of `a`, second a slot of `b`). An upper slot contracts directly with
/// a lower slot of the same type; two lower slots of opposite types contract
/// through the inverse metric, two upper slots of opposite types through the
/// metric. Anything else throws std::invalid_argument.
ComplexTensor contract(const ComplexTensor& a, const ComplexTensor& b,
                       std::span<const std::pair<int, int>> pairs,
                       const ComplexTensor& metric, const ComplexTensor& inverse_metric);

/// Trace one tensor over two of its own slots, same pairing rules as contract.
ComplexTensor trace_pair(const ComplexTensor& t, int slot_i, int slot_j,
                         const ComplexTensor& metric, const ComplexTensor& inverse_metric);

/// For rank-2 (holo, anti) tensors: swap the slots and conjugate. Fixed
/// points of this map are exactly the tensors representing real J-invariant
/// symmetric 2-tensors.
ComplexTensor conjugate_transpose_pair(const ComplexTensor& t);

/// Raise one lower slot. The slot changes type: a lower antiholomorphic
/// index raised with g^{k qbar} becomes an upper holomorphic one, and vice
/// versa.
ComplexTensor raise_slot(const ComplexTensor& t, int slot, const ComplexTensor& inverse_metric);

/// Lower one upper slot (type flips, see raise_slot).
ComplexTensor lower_slot(const ComplexTensor& t, int slot, const ComplexTensor& metric);

}  // namespace koiso
