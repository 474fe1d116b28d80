// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "qccs/linalg.hpp"

#include <set>
#include <string>
#include <vector>

namespace qccs {

/// A concrete trace-preserving channel applied to specific wires; stands in
/// for one instance of the universally quantified external super-operator in
/// the quantum-input matching clause.
struct ProbeInstance {
    std::string id;
    SuperOperator op;
    std::vector<std::string> wires;
};

/// Finite family of probe channels. Instantiated at use time on the wires of
/// the universe disjoint from a protected set; verdicts that rely on matching
/// under these probes are sound only up to this family.
class ProbeSet {
public:
    /// identity; Pauli X/Y/Z per wire; preparations of |0>,|1>,|+>,|i> per
    /// wire; full depolarizing per wire; controlled-not per ordered wire pair.
    static ProbeSet basic();
    /// basic plus Hadamard and phase gates per wire and swap per pair.
    static ProbeSet extended();
    static ProbeSet by_name(const std::string& name); // "basic" | "extended"

    std::vector<ProbeInstance> instantiate(const QubitRegister& universe,
                                           const std::set<std::string>& protected_wires) const;
    const std::string& preset() const { return preset_; }

private:
    struct Shape {
        std::string name;
        SuperOperator op;
    };
    std::vector<Shape> singles_;
    std::vector<Shape> pairs_;
    std::string preset_;
};

} // namespace qccs
