#ifndef HMT_TYPES_HPP
#define HMT_TYPES_HPP

#include <Eigen/Dense>

namespace hmt {

using Vec = Eigen::VectorXd;
using Mat = Eigen::MatrixXd;

/// One target vector per grid node, shape (nodes, dim_n). Node k lives in row k.
using NodeField = Eigen::MatrixXd;

} // namespace hmt

#endif
