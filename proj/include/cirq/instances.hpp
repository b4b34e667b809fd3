#pragma once

// Plain problem-instance types shared by the brute-force references and the
// hardness-reduction generators: undirected graphs with a cover budget, and
// exists/forall quantified Boolean formulas with a DNF matrix.

#include <string>
#include <utility>
#include <vector>

namespace cirq {

// An undirected graph: an ordered vertex list and an ordered edge list.
struct Graph {
    std::vector<std::string> vertices;
    std::vector<std::pair<std::string, std::string>> edges;
};

// Throws std::invalid_argument when a vertex is declared twice, an edge
// endpoint is undeclared, an edge is a self-loop, or the same unordered edge
// appears twice.
void validate_graph(const Graph& g);

// Number of edges incident to v (0 when v is not an endpoint of any edge).
int vertex_degree(const Graph& g, const std::string& v);

// "Does g have a vertex cover of size at most k?"
struct VCInstance {
    Graph graph;
    int k = 0;
};

// Graph invariants plus k >= 1 and a nonempty edge list.
void validate_vc(const VCInstance& inst);

// One literal of a DNF matrix.
struct DnfLiteral {
    std::string var;
    bool negated = false;

    friend bool operator==(const DnfLiteral&, const DnfLiteral&) = default;
};

// exists X forall Y (matrix), where the matrix is a disjunction of
// conjunctions of literals over X union Y.
struct Sigma2Instance {
    std::vector<std::string> exists_vars;  // X
    std::vector<std::string> forall_vars;  // Y
    std::vector<std::vector<DnfLiteral>> dnf;
};

// Throws std::invalid_argument when a variable is declared twice or on both
// sides, a literal mentions an undeclared variable, a conjunct is empty, or
// the matrix has no conjuncts (an empty disjunction has no formula rendering
// downstream, so it is rejected at the type boundary).
void validate_sigma2(const Sigma2Instance& inst);

}  // namespace cirq
