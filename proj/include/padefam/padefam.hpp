#pragma once

#include "padefam/cmatrix.hpp"
#include "padefam/errors.hpp"
#include "padefam/hypergeometric.hpp"
#include "padefam/identities.hpp"
#include "padefam/io.hpp"
#include "padefam/matrix_iteration.hpp"
#include "padefam/pade.hpp"
#include "padefam/rational.hpp"
#include "padefam/sample_table.hpp"
#include "padefam/scalar_iteration.hpp"
#include "padefam/series.hpp"
#include "padefam/stieltjes.hpp"
#include "padefam/test_matrix.hpp"
#include "padefam/verify.hpp"
