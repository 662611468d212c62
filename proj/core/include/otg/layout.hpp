#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace otg {

/**
 * Named qubit registers over a contiguous block of qubits. Qubit ids run
 * 0..n-1 with qubit 0 the most significant bit of a basis index; within a
 * register the first qubit is the most significant, so a register's integer
 * value is its big-endian binary expansion across its qubits.
 */
struct RegisterLayout {
    struct Register {
        std::string name;
        std::vector<uint32_t> qubits;
    };

    std::vector<Register> registers;

    RegisterLayout() = default;
    explicit RegisterLayout(std::vector<Register> regs);

    /// Registers allocated left to right: the first named register owns the
    /// most significant qubits.
    static RegisterLayout contiguous(const std::vector<std::pair<std::string, uint32_t>>& spec);

    uint32_t total_qubits() const;
    bool has(std::string_view name) const;
    const Register& reg(std::string_view name) const;
    /// Qubits of the named registers, concatenated in layout order.
    std::vector<uint32_t> qubits_of(const std::vector<std::string>& names) const;
    /// Sub-layout of the named registers (layout order preserved), qubits
    /// renumbered to 0..k-1.
    RegisterLayout subset(const std::vector<std::string>& keep) const;

    void validate() const;
};

} // namespace otg
