from event_system import EventBusSingleton
from event_system.events.Clustering import (
    EpochCompletedEvent,
    SelfExpressionFlaggedEvent,
    Side,
)
from event_system.events.Data import ArtifactWrittenEvent, RatingsBinarizedEvent
from event_system.events.Training import TrainingFinishedEvent


class ManifestRecorder:
    """
    Collects facts a run manifest should carry: dropped tie ratings, self-expression
    columns that missed the solver tolerance, convergence of each training run, epochs run
    and every file written.
    """

    def __init__(self):
        self.notes: dict[str, object] = {}
        self.outputs: list[str] = []
        self._subscriptions = [
            (RatingsBinarizedEvent, self.on_binarized),
            (SelfExpressionFlaggedEvent, self.on_flagged),
            (TrainingFinishedEvent, self.on_training_finished),
            (EpochCompletedEvent, self.on_epoch),
            (ArtifactWrittenEvent, self.on_artifact),
        ]

    def attach(self) -> "ManifestRecorder":
        for event_type, handler in self._subscriptions:
            EventBusSingleton.subscribe(event_type, handler)
        return self

    def detach(self):
        for event_type, handler in self._subscriptions:
            EventBusSingleton.unsubscribe(event_type, handler)

    def on_binarized(self, event: RatingsBinarizedEvent):
        self.notes["binarize_mean"] = event.mean_rating
        self.notes["binarize_kept"] = event.kept
        self.notes["binarize_dropped_ties"] = event.dropped

    def on_flagged(self, event: SelfExpressionFlaggedEvent):
        suffix = f"_{event.side.value}" if isinstance(event.side, Side) else ""
        key = f"ssc_flagged_columns{suffix}"
        self.notes[key] = int(self.notes.get(key, 0)) + int(event.columns)

    def on_training_finished(self, event: TrainingFinishedEvent):
        runs = int(self.notes.get("training_runs", 0)) + 1
        self.notes["training_runs"] = runs
        self.notes["training_converged_runs"] = int(
            self.notes.get("training_converged_runs", 0)
        ) + int(bool(event.converged))

    def on_epoch(self, event: EpochCompletedEvent):
        self.notes["cdmc_epochs"] = event.epoch

    def on_artifact(self, event: ArtifactWrittenEvent):
        self.outputs.append(str(event.path))
