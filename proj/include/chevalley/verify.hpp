#pragma once

#include "chevalley/certificate.hpp"
#include "chevalley/integrality.hpp"

#include <map>

namespace chev {

// CHEVALLEY_THREADS, else hardware concurrency
int thread_count();

// Chevalley system restricted to the nonisotropic roots of a ball
using ChevalleyMap = std::map<EalaRoot, Elem>;
ChevalleyMap system_in_ball(const EalaAlgebra& E, const ChevalleySystemT& C, int ball);
// singletons of B at nonisotropic roots
ChevalleyMap system_from_structure(const EalaAlgebra& E, const IntegralStructure& B);

// CS-i: [x_a, x_-a] = h_a lies in H and acts by 2 on x_a; CS-ii: tau(x_a) = -x_-a
CertificateSet verify_chevalley_system(const EalaAlgebra& E, const ChevalleyMap& C, const EalaAutomorphism& tau,
                                       int ball);
CertificateSet verify_core_axioms(const EalaAlgebra& E, const IntegralStructure& Bc, const EalaAutomorphism& tau,
                                  int ball);
CertificateSet verify_eala_axioms(const EalaAlgebra& E, const IntegralStructure& B, const EalaAutomorphism& tau,
                                  int ball);
CertificateSet verify_torus_axioms(const MultiLoopAlgebra& L, const IntegralStructure& B, const LoopAutomorphism& tau,
                                   int ball);
CertificateSet verify_extension_conditions(const EalaAlgebra& E, const IntegralStructure& Bc, int ball);
Certificate verify_zform_closure(const EalaAlgebra& E, const IntegralStructure& B, int ball);
Certificate verify_weyl_automorphisms(const FiniteChevalleyAlgebra& g, const FinChevalleySystem& sys);
Certificate verify_string_proportionality(const EalaAlgebra& E, const ChevalleySystemT& C, const IVec& alpha, const IVec& sigma,
                        int nmin, int nmax);
Certificate verify_reflectable_base(const EalaRootSystem& ers, const std::vector<EalaRoot>& pi, int ball);

// Ball-bounded probes; reported as evidence only.
Certificate probe_tameness(const EalaAlgebra& E, int ball);
Certificate probe_local_nilpotency(const EalaAlgebra& E, const ChevalleyMap& C, int ball);

}  // namespace chev
