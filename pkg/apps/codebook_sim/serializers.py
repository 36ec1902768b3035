from django.conf import settings
from rest_framework import serializers

from apps.codebook_sim.types import CODE_KINDS, DECODERS, MAX_LIKELIHOOD, CascadeConfig
from apps.info_matrix.serializers import TransitionMatrixSerializer


class CascadeConfigSerializer(serializers.Serializer):
    """
    Cascade configuration from a JSON file or command flags.

    A single sigma is repeated for every hop; sigma_floor defaults to the smallest sigma.
    """

    n = serializers.IntegerField(min_value=1)
    N = serializers.IntegerField(min_value=2)
    R = serializers.FloatField()
    P0 = serializers.FloatField(default=1.0)
    sigma = serializers.ListField(child=serializers.FloatField(), allow_empty=False)
    sigma_floor = serializers.FloatField(required=False, allow_null=True)
    code_kind = serializers.ChoiceField(choices=CODE_KINDS, default='antipodal')
    decoder = serializers.ChoiceField(choices=DECODERS, default=MAX_LIKELIHOOD)
    shots = serializers.IntegerField(min_value=1)
    seed = serializers.IntegerField(min_value=0, required=False, allow_null=True)

    def validate_R(self, value):
        """Validate rate is positive"""
        if not value > 0:
            raise serializers.ValidationError("Rate must be greater than 0")
        return value

    def validate_P0(self, value):
        if not value > 0:
            raise serializers.ValidationError("Power must be greater than 0")
        return value

    def validate(self, attrs):
        sigmas = attrs['sigma']
        if len(sigmas) == 1:
            sigmas = sigmas * attrs['n']
        if len(sigmas) != attrs['n']:
            raise serializers.ValidationError({'sigma': f"Expected 1 or {attrs['n']} values, got {len(sigmas)}"})
        if any(not sigma > 0 for sigma in sigmas):
            raise serializers.ValidationError({'sigma': "Noise levels must be greater than 0"})
        attrs['sigma'] = sigmas
        if attrs.get('sigma_floor') is None:
            attrs['sigma_floor'] = min(sigmas)
        if attrs.get('seed') is None:
            attrs['seed'] = settings.CONE_BOUND['DEFAULT_SEED']
        return attrs

    def create(self, validated_data):
        return CascadeConfig(
            n=validated_data['n'],
            N=validated_data['N'],
            R=validated_data['R'],
            P0=validated_data['P0'],
            sigmas=tuple(validated_data['sigma']),
            sigma_floor=validated_data['sigma_floor'],
            code_kind=validated_data['code_kind'],
            decoder=validated_data['decoder'],
            shots=validated_data['shots'],
            seed=validated_data['seed'],
        )

    def to_representation(self, instance):
        if isinstance(instance, CascadeConfig):
            return {
                'n': instance.n,
                'N': instance.N,
                'R': instance.R,
                'P0': instance.P0,
                'sigma': list(instance.sigmas),
                'sigma_floor': instance.sigma_floor,
                'code_kind': instance.code_kind,
                'decoder': instance.decoder,
                'shots': instance.shots,
                'seed': instance.seed,
            }
        return super().to_representation(instance)


class CascadeReportSerializer(serializers.Serializer):
    config = CascadeConfigSerializer()
    M = serializers.IntegerField(source='config.M')
    hop_matrices = TransitionMatrixSerializer(many=True)
    beta_hats = serializers.ListField(child=serializers.FloatField())
    mu_hats = serializers.ListField(child=serializers.FloatField())
    mu_stderrs = serializers.ListField(child=serializers.FloatField())
    mi_matrix_bits = serializers.FloatField()
    mi_direct_bits = serializers.FloatField()
    mc_error_bits = serializers.FloatField()
    contraction_bits = serializers.FloatField()
    theorem1_bits = serializers.FloatField()
    heterogeneous_bits = serializers.FloatField()
    slack = serializers.FloatField()


class CascadeRowSerializer(serializers.Serializer):
    """Flat CSV row"""

    n = serializers.IntegerField()
    N = serializers.IntegerField()
    R = serializers.FloatField()
    P0 = serializers.FloatField()
    sigma_floor = serializers.FloatField()
    code_kind = serializers.CharField()
    decoder = serializers.CharField()
    shots = serializers.IntegerField()
    seed = serializers.IntegerField()
    mu_hat_mean = serializers.FloatField()
    mi_matrix_bits = serializers.FloatField()
    mi_direct_bits = serializers.FloatField()
    mc_error_bits = serializers.FloatField()
    contraction_bits = serializers.FloatField()
    theorem1_bits = serializers.FloatField()
    heterogeneous_bits = serializers.FloatField()
    slack = serializers.FloatField()
