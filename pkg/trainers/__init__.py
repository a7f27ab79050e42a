from .CDMCTrainer import CdmcConfig as CdmcConfig
from .CDMCTrainer import CdmcTrace as CdmcTrace
from .CDMCTrainer import CDMCTrainer as CDMCTrainer
from .CDMCTrainer import CrossRunAmi as CrossRunAmi
from .CDMCTrainer import EpochRecord as EpochRecord
from .CDMCTrainer import cross_run_ami as cross_run_ami
from .CDMCTrainer import fit_cdmc as fit_cdmc
from .GS1MCTrainer import FitResult as FitResult
from .GS1MCTrainer import GS1MCTrainer as GS1MCTrainer
from .GS1MCTrainer import fit_gs1mc as fit_gs1mc
from .GS1MCTrainer import predict_missing as predict_missing
from .TrainConfig import TrainConfig as TrainConfig
