//! Concrete encoders and decoders for sending an n-bit string with m qubits,
//! and exact evaluation of how often the receiver lands within Hamming
//! distance `t` of the message.

pub mod encoder;
pub mod joint;
pub mod oracle;
pub mod povm;
pub mod scheme;

pub use encoder::{
    product_encoder, qrac_2to1_encoder, random_classical_code, truncation_decoder, truncation_encoder,
    ClassicalCode, DecodeMap, Encoder, QuantumCode,
};
pub use joint::{
    classical_joint, hamming_success, joint_distribution, joint_mutual_information, DenseJoint,
    JointDistribution,
};
pub use oracle::{optimal_hamming_decoder, ObservationTable, OptimalDecoder};
pub use povm::{pretty_good_measurement, Povm};
pub use scheme::{dominance_curve, information_check, DominanceRow, Scheme, SchemeDescriptor, SchemeKind};
