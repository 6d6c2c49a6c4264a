#include "nilie/lie_core.hpp"

#include <functional>

#include <json.hpp>

namespace nilie {

StructureConstants StructureConstants::so3() {
    StructureConstants sc(3);
    for (int a = 0; a < 3; ++a)
        for (int b = 0; b < 3; ++b)
            for (int cc = 0; cc < 3; ++cc)
                sc.at(a, b, cc) = (a - b) * (b - cc) * (cc - a) / 2.0;
    return sc;
}

StructureConstants StructureConstants::from_json(const std::string& text) {
    auto doc = nlohmann::json::parse(text);
    int dim = doc.at("dim").get<int>();
    if (dim < 1) throw std::invalid_argument("structure constants: dim must be positive");
    StructureConstants sc(dim);
    for (const auto& e : doc.at("entries")) {
        if (!e.is_array() || e.size() != 4)
            throw std::invalid_argument("structure constants: entry must be [A,B,C,value]");
        int A = e[0].get<int>(), B = e[1].get<int>(), C = e[2].get<int>();
        if (A < 0 || B < 0 || C < 0 || A >= dim || B >= dim || C >= dim)
            throw std::invalid_argument("structure constants: index out of range");
        sc.at(A, B, C) = e[3].get<double>();
    }
    return sc;
}

std::string StructureConstants::to_json() const {
    nlohmann::json doc;
    doc["dim"] = dim;
    auto entries = nlohmann::json::array();
    for (int A = 0; A < dim; ++A)
        for (int B = 0; B < dim; ++B)
            for (int C = 0; C < dim; ++C)
                if (at(A, B, C) != 0.0) entries.push_back({A, B, C, at(A, B, C)});
    doc["entries"] = entries;
    return doc.dump(2);
}

StructureValidity validate_structure(const StructureConstants& sc, double tol) {
    const int n = sc.dim;
    if (sc.c.size() != std::size_t(n) * n * n)
        throw std::invalid_argument("validate_structure: tensor shape mismatch");
    StructureValidity v;
    for (int A = 0; A < n; ++A)
        for (int B = 0; B < n; ++B)
            for (int C = 0; C < n; ++C)
                v.antisymmetry_residual =
                    std::max(v.antisymmetry_residual, std::abs(sc.at(A, B, C) + sc.at(B, A, C)));
    for (int A = 0; A < n; ++A)
        for (int B = 0; B < n; ++B)
            for (int C = 0; C < n; ++C)
                for (int E = 0; E < n; ++E) {
                    double s = 0.0;
                    for (int D = 0; D < n; ++D)
                        s += sc.at(A, B, D) * sc.at(D, C, E) + sc.at(B, C, D) * sc.at(D, A, E) +
                             sc.at(C, A, D) * sc.at(D, B, E);
                    v.jacobi_residual = std::max(v.jacobi_residual, std::abs(s));
                }
    v.antisymmetry_ok = v.antisymmetry_residual <= tol;
    v.jacobi_ok = v.jacobi_residual <= tol;
    return v;
}

double poisson_lie_bracket(const StructureConstants& sc, const Eigen::VectorXd& grad1,
                           const Eigen::VectorXd& grad2, const Covector& f) {
    const int n = sc.dim;
    if (grad1.size() != n || grad2.size() != n || f.size() != n)
        throw std::invalid_argument("poisson_lie_bracket: dimension mismatch");
    double s = 0.0;
    for (int A = 0; A < n; ++A)
        for (int B = 0; B < n; ++B)
            for (int C = 0; C < n; ++C) s += sc.at(A, B, C) * f[C] * grad1[A] * grad2[B];
    return s;
}

Covector coadjoint_apply(const Eigen::MatrixXd& ad_matrix, const Covector& f) {
    if (ad_matrix.rows() != ad_matrix.cols() || ad_matrix.rows() != f.size())
        throw std::invalid_argument("coadjoint_apply: dimension mismatch");
    Eigen::FullPivLU<Eigen::MatrixXd> lu(ad_matrix);
    if (!lu.isInvertible())
        throw std::invalid_argument("coadjoint_apply: singular adjoint matrix is not a group element");
    return lu.inverse().transpose() * f;
}

double casimir_value(const Covector& f) {
    if (f.size() != 3) throw std::invalid_argument("casimir_value: so(3) specialization needs dim 3");
    return f.squaredNorm();
}

Eigen::VectorXd numeric_gradient(const std::function<double(const Eigen::VectorXd&)>& fn,
                                 const Eigen::VectorXd& f, double h) {
    Eigen::VectorXd g(f.size());
    for (int i = 0; i < f.size(); ++i) {
        Eigen::VectorXd fp = f, fm = f;
        fp[i] += h;
        fm[i] -= h;
        g[i] = (fn(fp) - fn(fm)) / (2.0 * h);
    }
    return g;
}

} // namespace nilie
