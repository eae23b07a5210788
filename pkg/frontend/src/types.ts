/** Wire types, mirroring the session API field for field. */

export type Mode = "disable" | "force";

export interface Decision {
  mode: Mode;
  allowed: string[];
  disabled: string[];
  preempted: string[];
}

export interface SessionView {
  id: string;
  plant_state: string;
  sup_state: string;
  history: string[];
  eligible: string[];
  marked: boolean;
  can_undo: boolean;
  decision: Decision;
}

export interface StepRejection {
  error_kind: string;
  message: string;
}
