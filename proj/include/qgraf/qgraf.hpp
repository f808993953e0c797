#pragma once

// Everything except the command-line layer (qgraf/cli/*), which also needs
// the vendored json.hpp.

#include "qgraf/al_salam_chihara.hpp"
#include "qgraf/bessel.hpp"
#include "qgraf/context.hpp"
#include "qgraf/error.hpp"
#include "qgraf/gamma.hpp"
#include "qgraf/hypergeometric.hpp"
#include "qgraf/identities/addition.hpp"
#include "qgraf/identities/charlier_extension.hpp"
#include "qgraf/identities/graf.hpp"
#include "qgraf/identities/limits.hpp"
#include "qgraf/identities/qbessel.hpp"
#include "qgraf/identities/series_identities.hpp"
#include "qgraf/orthogonality.hpp"
#include "qgraf/q_charlier.hpp"
#include "qgraf/qpochhammer.hpp"
#include "qgraf/quadrature.hpp"
#include "qgraf/report.hpp"
#include "qgraf/summation.hpp"
