"""Four from-scratch classifiers with train/predict pairs and file round-trips."""

from .naive_bayes import GaussianNBModel, predict_nb, train_nb
from .logistic import LogisticConfig, LogisticModel, predict_logreg, train_logreg
from .mlp import MLPConfig, MLPGrads, MLPModel, mlp_loss_and_grad, predict_mlp, train_mlp
from .kmeans import KMeansModel, map_clusters, predict_kmeans, train_kmeans
from .model_io import Predictor, load_model, load_predictor, save_model
from .common import TrainingDivergedError

# canonical column order of the comparison tables
ALGORITHMS = ("logistic", "gaussian-nb", "mlp", "kmeans")

__all__ = [
    "ALGORITHMS",
    "GaussianNBModel",
    "KMeansModel",
    "LogisticConfig",
    "LogisticModel",
    "MLPConfig",
    "MLPGrads",
    "MLPModel",
    "Predictor",
    "TrainingDivergedError",
    "load_model",
    "load_predictor",
    "map_clusters",
    "mlp_loss_and_grad",
    "predict_kmeans",
    "predict_logreg",
    "predict_mlp",
    "predict_nb",
    "save_model",
    "train_kmeans",
    "train_logreg",
    "train_mlp",
    "train_nb",
]
